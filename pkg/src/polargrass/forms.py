"""Hermitian, alternating and quadratic forms in standard coordinates.

Every form is built in a fixed coordinate layout:

* hyperbolic pairs ``(0, 1), (2, 3), ...`` first,
* then (even characteristic quadratic forms only) the ``m`` anisotropic binary
  blocks ``lam*x^2 + x*y + mu*y^2``,
* then the anisotropic diagonal coordinates with coefficients ``kappa``,
* and the radical as the last ``d`` coordinates.

Sesquilinear kinds store their Gram matrix; the quadratic kind stores the
upper-triangular coefficient matrix ``Q`` with ``q(x) = x Q x^T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .fields import Field, FieldError, InfiniteFieldError, iter_vectors, parse_field
from .linalg import Subspace, canonical_subspace, identity, kernel

__all__ = [
    "WittParams",
    "Form",
    "build_hermitian",
    "build_alternating",
    "build_quadratic_odd",
    "build_quadratic_even",
    "evaluate",
    "polarize",
    "radical",
    "perp",
    "is_totally_singular",
    "witt_params_bruteforce",
    "form_from_json",
    "form_to_json",
]


@dataclass(frozen=True)
class WittParams:
    """Reduced Witt index n, anisotropic defect d0, radical dimension d.

    For even characteristic quadratic forms ``d0 = 2*m + dp0``.
    """

    n: int
    d0: int
    d: int
    N: int
    m: int = 0
    dp0: int = 0


@dataclass(eq=False)
class Form:
    kind: str  # "hermitian" | "alternating" | "quadratic" | "symmetric"
    field: Field
    matrix: tuple[tuple, ...]
    params: WittParams
    kappa: tuple = ()
    lam: tuple = ()
    mu: tuple = ()
    _terms: list = dc_field(default_factory=list, repr=False)
    _bterms: list = dc_field(default_factory=list, repr=False)

    def __post_init__(self):
        F = self.field
        N = len(self.matrix)
        self._terms = [(i, j, c) for i in range(N) for j in range(N)
                       if (c := self.matrix[i][j]) != F.zero]
        if self.kind == "quadratic":
            G = self.gram()
            self._bterms = [(i, j, c) for i in range(N) for j in range(N)
                            if (c := G[i][j]) != F.zero]
        else:
            self._bterms = self._terms

    @property
    def N(self) -> int:
        return self.params.N

    # coordinate layout

    @property
    def hyperbolic_pairs(self) -> list[tuple[int, int]]:
        return [(2 * i, 2 * i + 1) for i in range(self.params.n)]

    @property
    def anisotropic_blocks(self) -> list[tuple[int, int]]:
        n = self.params.n
        return [(2 * n + 2 * i, 2 * n + 2 * i + 1) for i in range(self.params.m)]

    @property
    def anisotropic_coords(self) -> list[int]:
        p = self.params
        start = 2 * p.n + 2 * p.m
        count = p.dp0 if self.kind == "quadratic" and self.field.char == 2 else p.d0
        return list(range(start, start + count))

    @property
    def radical_coords(self) -> list[int]:
        return list(range(self.N - self.params.d, self.N))

    # evaluation

    def gram(self) -> list[tuple]:
        """Gram matrix of the (bi/sesqui)linear form; Q + Q^T for the quadratic kind."""
        M = self.matrix
        if self.kind != "quadratic":
            return [tuple(r) for r in M]
        F, N = self.field, len(M)
        return [tuple(F.add(M[i][j], M[j][i]) for j in range(N)) for i in range(N)]

    def pair(self, x: Sequence, y: Sequence):
        """The sesquilinear value, or the bilinearization for the quadratic kind."""
        F = self.field
        add, mul = F.add, F.mul
        s = F.zero
        if self.kind == "hermitian":
            conj = F.conj
            for i, j, c in self._bterms:
                if x[i] != F.zero and y[j] != F.zero:
                    s = add(s, mul(mul(conj(x[i]), c), y[j]))
        else:
            for i, j, c in self._bterms:
                if x[i] != F.zero and y[j] != F.zero:
                    s = add(s, mul(mul(x[i], c), y[j]))
        return s

    def q(self, x: Sequence):
        """The quadratic form value."""
        if self.kind != "quadratic":
            raise ValueError(f"a {self.kind} form has no quadratic value")
        F = self.field
        s = F.zero
        for i, j, c in self._terms:
            if x[i] != F.zero and x[j] != F.zero:
                s = F.add(s, F.mul(F.mul(x[i], c), x[j]))
        return s

    def functional(self, x: Sequence) -> list:
        """Coefficients L with pair(x, y) = sum_j L[j] * y[j]."""
        F = self.field
        L = [F.zero] * self.N
        for i, j, c in self._bterms:
            if x[i] != F.zero:
                xi = F.conj(x[i]) if self.kind == "hermitian" else x[i]
                L[j] = F.add(L[j], F.mul(xi, c))
        return L

    def is_singular(self, x: Sequence) -> bool:
        if self.kind == "quadratic":
            return self.q(x) == self.field.zero
        return self.pair(x, x) == self.field.zero

    def __repr__(self) -> str:
        p = self.params
        extra = f", m={p.m}, dp0={p.dp0}" if p.m or p.dp0 else ""
        return f"Form({self.kind}, {self.field!r}, n={p.n}, d0={p.d0}, d={p.d}{extra})"


def _zeros(F: Field, N: int) -> list[list]:
    return [[F.zero] * N for _ in range(N)]


def _freeze(M) -> tuple[tuple, ...]:
    return tuple(tuple(r) for r in M)


def _check_n(n: int, d0: int, d: int):
    if n < 0 or d0 < 0 or d < 0:
        raise ValueError(f"negative parameter in n={n}, d0={d0}, d={d}")


def _nonzero_vectors(F: Field, dim: int):
    for v in iter_vectors(F, dim):
        if any(x != F.zero for x in v):
            yield v


def build_hermitian(F: Field, n: int, d0: int = 0, d: int = 0,
                    kappa: Sequence | None = None) -> Form:
    """Hermitian form with n hyperbolic pairs, d0 anisotropic terms kappa_j x^sigma y, radical d."""
    _check_n(n, d0, d)
    if not getattr(F, "has_involution", False):
        raise FieldError(f"{F} has no involutory automorphism")
    if F.is_finite and d0 > 1:
        raise ValueError(f"a Hermitian form over {F!r} has anisotropic defect at most 1, got {d0}")
    kappa = tuple(kappa) if kappa is not None else (F.one,) * d0
    if len(kappa) != d0:
        raise ValueError(f"expected {d0} kappa values, got {len(kappa)}")
    for c in kappa:
        if c == F.zero or F.conj(c) != c:
            raise ValueError(f"kappa value {c} is not a nonzero element of the fixed subfield")
    N = 2 * n + d0 + d
    G = _zeros(F, N)
    for i in range(n):
        G[2 * i][2 * i + 1] = G[2 * i + 1][2 * i] = F.one
    for j, c in enumerate(kappa):
        G[2 * n + j][2 * n + j] = c
    form = Form("hermitian", F, _freeze(G), WittParams(n, d0, d, N), kappa=kappa)
    _check_anisotropic(form)
    return form


def build_alternating(F: Field, n: int, d: int = 0) -> Form:
    """Alternating form sum_i (x_{2i} y_{2i+1} - x_{2i+1} y_{2i}) with radical of dimension d."""
    _check_n(n, 0, d)
    N = 2 * n + d
    G = _zeros(F, N)
    for i in range(n):
        G[2 * i][2 * i + 1] = F.one
        G[2 * i + 1][2 * i] = F.neg(F.one)
    return Form("alternating", F, _freeze(G), WittParams(n, 0, d, N))


def _least_anisotropic_partner(F: Field) -> object:
    """Least c with x^2 + c y^2 anisotropic, i.e. -c a non-square."""
    for c in F.nonzero():
        if not F.is_square(F.neg(c)):
            return c
    raise FieldError(f"{F!r} has no anisotropic binary diagonal form")  # unreachable, odd q


def build_quadratic_odd(F: Field, n: int, d0: int = 0, d: int = 0,
                        kappa: Sequence | None = None) -> Form:
    """Quadratic form sum_i x_{2i} x_{2i+1} + sum_j kappa_j x_j^2 in characteristic other than 2."""
    _check_n(n, d0, d)
    if F.char == 2:
        raise FieldError("use build_quadratic_even in characteristic 2")
    if F.is_finite and d0 > 2:
        raise ValueError(f"a quadratic form over {F!r} has anisotropic defect at most 2, got {d0}")
    if kappa is None:
        if F.is_finite:
            kappa = [F.one, _least_anisotropic_partner(F)][:d0]
        else:
            kappa = [F.one] * d0
    kappa = tuple(kappa)
    if len(kappa) != d0:
        raise ValueError(f"expected {d0} kappa values, got {len(kappa)}")
    if any(c == F.zero for c in kappa):
        raise ValueError("kappa values must be nonzero")
    if not F.is_finite and d0 > 1 and len({c > 0 for c in kappa}) > 1:
        raise ValueError("over the rationals only definite anisotropic parts are accepted")
    N = 2 * n + d0 + d
    Q = _zeros(F, N)
    for i in range(n):
        Q[2 * i][2 * i + 1] = F.one
    for j, c in enumerate(kappa):
        Q[2 * n + j][2 * n + j] = c
    form = Form("quadratic", F, _freeze(Q), WittParams(n, d0, d, N), kappa=kappa)
    _check_anisotropic(form)
    return form


def _irreducible_binary(F: Field, lam, mu) -> bool:
    """lam t^2 + t + mu has no root in F (exhaustive)."""
    return all(F.add(F.add(F.mul(lam, F.mul(t, t)), t), mu) != F.zero for t in F.elements())


def build_quadratic_even(F: Field, n: int, m: int = 0, dp0: int = 0, d: int = 0,
                         lam: Sequence | None = None, mu: Sequence | None = None,
                         kappa: Sequence | None = None) -> Form:
    """Characteristic 2 quadratic form: n hyperbolic pairs, m blocks
    lam x^2 + x y + mu y^2, dp0 terms kappa x^2, radical of dimension d."""
    _check_n(n, dp0, d)
    if F.char != 2:
        raise FieldError("build_quadratic_even needs characteristic 2")
    if m < 0:
        raise ValueError("m must be non-negative")
    if dp0 > 1:
        raise ValueError(f"over the perfect field {F!r} at most one kappa term is anisotropic, got {dp0}")
    if lam is None or mu is None:
        pair = next(((a, b) for b in F.nonzero() for a in F.nonzero()
                     if _irreducible_binary(F, a, b)), None)
        if m and pair is None:
            raise FieldError(f"no irreducible lam t^2 + t + mu over {F!r}")  # unreachable
        if pair and _irreducible_binary(F, F.one, F.one):
            pair = (F.one, F.one)
        lam = [pair[0]] * m if lam is None else lam
        mu = [pair[1]] * m if mu is None else mu
    lam, mu = tuple(lam), tuple(mu)
    kappa = tuple(kappa) if kappa is not None else (F.one,) * dp0
    if len(lam) != m or len(mu) != m or len(kappa) != dp0:
        raise ValueError("lam, mu need m entries and kappa needs dp0 entries")
    for a, b in zip(lam, mu):
        if not _irreducible_binary(F, a, b):
            raise ValueError(f"{a} t^2 + t + {b} is reducible over {F!r}")
    if any(c == F.zero for c in kappa):
        raise ValueError("kappa values must be nonzero")
    N = 2 * n + 2 * m + dp0 + d
    Q = _zeros(F, N)
    for i in range(n + m):
        Q[2 * i][2 * i + 1] = F.one
    for i in range(m):
        Q[2 * n + 2 * i][2 * n + 2 * i] = lam[i]
        Q[2 * n + 2 * i + 1][2 * n + 2 * i + 1] = mu[i]
    for j, c in enumerate(kappa):
        Q[2 * n + 2 * m + j][2 * n + 2 * m + j] = c
    params = WittParams(n, 2 * m + dp0, d, N, m=m, dp0=dp0)
    form = Form("quadratic", F, _freeze(Q), params, kappa=kappa, lam=lam, mu=mu)
    _check_anisotropic(form)
    return form


def _check_anisotropic(form: Form):
    """The middle block (between the hyperbolic pairs and the radical) has no nonzero singular vector."""
    F = form.field
    p = form.params
    if not F.is_finite or p.d0 == 0:
        return
    start = 2 * p.n
    for v in _nonzero_vectors(F, p.d0):
        x = [F.zero] * form.N
        x[start:start + p.d0] = v
        if form.is_singular(x):
            raise ValueError(f"the anisotropic part of {form!r} has a singular vector {v}")


def evaluate(f: Form, u: Sequence, v: Sequence | None = None):
    """q(u) for quadratic forms when v is omitted; the (bi/sesqui)linear value otherwise."""
    if v is None:
        return f.q(u) if f.kind == "quadratic" else f.pair(u, u)
    return f.pair(u, v)


def polarize(f: Form) -> Form:
    """Bilinearization of a quadratic form: alternating in characteristic 2, symmetric otherwise."""
    if f.kind != "quadratic":
        raise ValueError("only quadratic forms are polarized")
    G = _freeze(f.gram())
    p = f.params
    if f.field.char == 2:
        params = WittParams(p.n + p.m, 0, p.dp0 + p.d, p.N)
        return Form("alternating", f.field, G, params)
    return Form("symmetric", f.field, G, p)


def radical(f: Form) -> Subspace:
    F = f.field
    K = kernel(F, f.gram(), f.N)
    if f.kind != "quadratic" or F.char != 2 or K.dim == 0:
        return K
    # q is semilinear on Rad(f_q): q(sum c_i r_i) = (sum c_i sqrt(q(r_i)))^2
    roots = [F.sqrt(f.q(r)) for r in K.basis]
    coeffs = kernel(F, [roots], K.dim)
    return canonical_subspace(F, [K.combine(c) for c in coeffs.basis], ambient_dim=f.N)


def perp(f: Form, S: Subspace) -> Subspace:
    if S.dim == 0:
        return canonical_subspace(f.field, identity(f.field, f.N))
    return kernel(f.field, [f.functional(s) for s in S.basis], f.N)


def _rows_totally_singular(f: Form, rows: Sequence[Sequence]) -> bool:
    zero = f.field.zero
    for i, u in enumerate(rows):
        if not f.is_singular(u):
            return False
        L = f.functional(u)
        for v in rows[i + 1:]:
            if f.field.dot(L, v) != zero:
                return False
    return True


def is_totally_singular(f: Form, S: Subspace | Sequence[Sequence]) -> bool:
    rows = S.basis if isinstance(S, Subspace) else S
    return _rows_totally_singular(f, rows)


def _max_totally_singular_dim(f: Form) -> int:
    """Largest dimension of a totally singular subspace, by exhaustive search over singular points.

    Bases are built from singular points taken in increasing enumeration order;
    subspaces already visited are skipped.  The search stops once it meets the
    bound (N + dim Rad f)/2.
    """
    F = f.field
    N = f.N
    pts = [v for v in _nonzero_vectors(F, N)
           if next(x for x in v if x != F.zero) == F.one and f.is_singular(v)]
    bound = (N + kernel(F, f.gram(), N).dim) // 2
    best = 0
    seen: set = set()

    def grow(rows, start):
        nonlocal best
        best = max(best, len(rows))
        if best >= bound:
            return
        Ls = [f.functional(r) for r in rows]
        for idx in range(start, len(pts)):
            p = pts[idx]
            if any(F.dot(L, p) != F.zero for L in Ls):
                continue
            S = canonical_subspace(F, rows + [p], ambient_dim=N, reduce=True)
            if S.dim == len(rows) or S.basis in seen:
                continue
            seen.add(S.basis)
            grow(rows + [p], idx + 1)
            if best >= bound:
                return

    grow([], 0)
    return best


def witt_params_bruteforce(f: Form) -> WittParams:
    """Witt parameters recomputed from scratch: radical by linear algebra, index by exhaustive search."""
    if not f.field.is_finite:
        raise InfiniteFieldError("exhaustive search needs a finite field")
    d = radical(f).dim
    top = _max_totally_singular_dim(f)
    n = top - d
    d0 = f.N - 2 * n - d
    if f.kind == "quadratic" and f.field.char == 2:
        dp0 = kernel(f.field, f.gram(), f.N).dim - d
        return WittParams(n, d0, d, f.N, m=(d0 - dp0) // 2, dp0=dp0)
    return WittParams(n, d0, d, f.N)


# JSON


def form_to_json(f: Form) -> dict:
    F = f.field
    p = f.params
    fmt = lambda xs: [F.format_element(x) for x in xs]  # noqa: E731
    kind = "quadratic" if f.kind == "quadratic" else f.kind
    return {"kind": kind, "field": F.text, "n": p.n, "d0": p.d0, "d": p.d, "m": p.m,
            "dp0": p.dp0, "lambda": fmt(f.lam), "mu": fmt(f.mu), "kappa": fmt(f.kappa)}


def form_from_json(obj: dict) -> Form:
    F = obj["field"]
    if isinstance(F, str):
        F = parse_field(F)
    kind = obj["kind"]
    n = int(obj.get("n", 0))
    d = int(obj.get("d", 0))
    parse = lambda key: ([F.parse_element(x) for x in obj[key]]  # noqa: E731
                         if obj.get(key) else None)
    if kind == "hermitian":
        return build_hermitian(F, n, int(obj.get("d0", 0)), d, parse("kappa"))
    if kind in ("alternating", "symplectic"):
        return build_alternating(F, n, d)
    if kind == "quadratic":
        if F.char == 2:
            m = int(obj.get("m", 0))
            dp0 = int(obj["dp0"]) if "dp0" in obj else max(0, int(obj.get("d0", 0)) - 2 * m)
            return build_quadratic_even(F, n, m, dp0, d, parse("lambda"), parse("mu"),
                                        parse("kappa"))
        return build_quadratic_odd(F, n, int(obj.get("d0", 0)), d, parse("kappa"))
    raise ValueError(f"unknown form kind {kind!r}")


def standard_form(kind: str, F: Field, **params) -> Form:
    """Dispatch to the builder for ``kind``, choosing the even or odd quadratic builder by characteristic."""
    return form_from_json({"kind": kind, "field": F, **params})
