"""Split Clifford algebra of rank 2n+1 and the general spin group inside it.

Conventions.  The quadratic space is Q^(2n+1) with basis e_1, ..., e_{2n+1}
and quadratic form

    Q(x) = x_{n+1}^2 + sum_{i<=n} x_i x_{2n+2-i},

whose polar form B(v, w) = Q(v+w) - Q(v) - Q(w) satisfies
B(e_i, e_{2n+2-i}) = 1 for i <= n and B(e_{n+1}, e_{n+1}) = 2.  This keeps
the hyperbolic idempotents f_i = e_i e_{2n+2-i} exact over the rationals.

Basis monomials E_I, I a subset of {1, ..., 2n+1}, are encoded as bitmasks
(bit i-1 for index i); the full algebra has dimension 2^(2n+1) and the even
part 2^(2n).  The even part acts on the exterior algebra of
W = span(e_1, ..., e_n): indices <= n act by wedge, indices >= n+2 by
contraction against their hyperbolic partner, and e_{n+1} by parity.  That
action is the 2^n-dimensional spin representation.

Structure-constant tables for right multiplication by a single generator are
built eagerly when a context is created, so contexts are immutable and safe
to share across threads.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .scalars import ONE, Scalar, ZERO, as_scalar, format_scalar, parse_rational, scalar_inv


class CliffordError(ValueError):
    pass


class NotInGSpinError(CliffordError):
    pass


class ContextMismatchError(CliffordError):
    pass


class CliffordContext:
    """Immutable context for the rank-(2n+1) split Clifford algebra.

    Holds the generator index universe and the eagerly built right
    multiplication tables ``mul_table[k][mask] -> ((mask', coeff), ...)``
    describing E_I * e_k in the monomial basis.
    """

    __slots__ = ("n", "dim_v", "mul_table")

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("n must be a positive integer")
        self.n = n
        self.dim_v = 2 * n + 1
        table = []
        for k in range(1, self.dim_v + 1):
            row = [self._build_mul1(mask, k) for mask in range(1 << self.dim_v)]
            table.append(tuple(row))
        self.mul_table = tuple(table)

    # generators are 1-indexed; partner(i) is the B-dual index
    def partner(self, i: int) -> int:
        return 2 * self.n + 2 - i

    def q_gen(self, i: int) -> Fraction:
        """Q(e_i): 1 in the middle, 0 on the isotropic basis vectors."""
        return ONE if i == self.n + 1 else ZERO

    def b_gen(self, i: int, j: int) -> Fraction:
        """Polar form B(e_i, e_j) on basis vectors."""
        if i == j:
            return 2 * self.q_gen(i)
        return ONE if j == self.partner(i) else ZERO

    def _build_mul1(self, mask: int, k: int) -> tuple:
        """E_I * e_k as a tuple of (mask, coeff), for I ascending in mask."""
        if mask == 0:
            return ((1 << (k - 1), ONE),)
        m = mask.bit_length()  # largest index present
        rest = mask & ~(1 << (m - 1))
        if k > m:
            return ((mask | (1 << (k - 1)), ONE),)
        if k == m:
            qv = self.q_gen(k)
            return ((rest, qv),) if qv != 0 else ()
        # e_m e_k = B(e_m, e_k) - e_k e_m with B nonzero only for partners
        out: dict[int, Scalar] = {}
        if m == self.partner(k):
            out[rest] = out.get(rest, ZERO) + ONE
        for sub, c in self._build_mul1(rest, k):
            full = sub | (1 << (m - 1))
            out[full] = out.get(full, ZERO) - c
        return tuple((mm, cc) for mm, cc in out.items() if cc != 0)

    def __eq__(self, other):
        return isinstance(other, CliffordContext) and self.n == other.n

    def __hash__(self):
        return hash(("CliffordContext", self.n))

    def __repr__(self):
        return f"CliffordContext(n={self.n})"


_context_cache: dict[int, CliffordContext] = {}


def get_context(n: int) -> CliffordContext:
    ctx = _context_cache.get(n)
    if ctx is None:
        ctx = _context_cache[n] = CliffordContext(n)
    return ctx


def _grade(mask: int) -> int:
    return bin(mask).count("1")


class Multivector:
    """Element of the Clifford algebra: sparse map from index subsets
    (bitmasks) to exact scalars."""

    __slots__ = ("context", "terms")

    def __init__(self, context: CliffordContext, terms: Mapping[int, Scalar] | None = None):
        self.context = context
        clean = {}
        for mask, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[int(mask)] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------
    @classmethod
    def scalar(cls, context: CliffordContext, value) -> "Multivector":
        return cls(context, {0: as_scalar(value)})

    @classmethod
    def generator(cls, context: CliffordContext, i: int) -> "Multivector":
        if not 1 <= i <= context.dim_v:
            raise ValueError(f"generator index out of range: {i}")
        return cls(context, {1 << (i - 1): ONE})

    @classmethod
    def vector(cls, context: CliffordContext, coords: Sequence) -> "Multivector":
        if len(coords) != context.dim_v:
            raise ValueError("vector must have 2n+1 coordinates")
        return cls(context, {1 << i: as_scalar(c) for i, c in enumerate(coords)})

    # -- structure ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_even(self) -> bool:
        return all(_grade(m) % 2 == 0 for m in self.terms)

    def is_scalar(self) -> bool:
        return all(m == 0 for m in self.terms)

    def is_vector(self) -> bool:
        return all(_grade(m) == 1 for m in self.terms)

    def scalar_part(self) -> Scalar:
        return self.terms.get(0, ZERO)

    def vector_coords(self) -> list:
        if not self.is_vector():
            raise CliffordError("not a grade-1 element")
        return [self.terms.get(1 << i, ZERO) for i in range(self.context.dim_v)]

    def _check(self, other: "Multivector"):
        if self.context != other.context:
            raise ContextMismatchError("multivectors from different contexts")

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return Multivector(self.context, out)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) - c
        return Multivector(self.context, out)

    def __neg__(self) -> "Multivector":
        return Multivector(self.context, {m: -c for m, c in self.terms.items()})

    def scale(self, s) -> "Multivector":
        s = as_scalar(s)
        return Multivector(self.context, {m: c * s for m, c in self.terms.items()})

    def __mul__(self, other: "Multivector") -> "Multivector":
        return cliff_mul(self, other)

    def __eq__(self, other):
        return (
            isinstance(other, Multivector)
            and self.context == other.context
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.context.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms):
            c = format_scalar(self.terms[mask])
            if mask == 0:
                parts.append(c)
            else:
                name = "e" + "e".join(str(i + 1) for i in range(self.context.dim_v) if mask >> i & 1)
                parts.append(name if c == "1" else f"({c})*{name}")
        return " + ".join(parts)

    # -- serialization -----------------------------------------------------
    def serialize(self) -> dict:
        out = {}
        for mask in sorted(self.terms):
            key = ",".join(str(i + 1) for i in range(self.context.dim_v) if mask >> i & 1)
            out[key] = format_scalar(self.terms[mask])
        return {"n": self.context.n, "terms": out}

    @classmethod
    def deserialize(cls, data: Mapping) -> "Multivector":
        ctx = get_context(int(data["n"]))
        terms = {}
        for key, val in data["terms"].items():
            mask = 0
            if key:
                for part in key.split(","):
                    i = int(part)
                    if not 1 <= i <= ctx.dim_v:
                        raise ValueError(f"index out of range: {i}")
                    if mask >> (i - 1) & 1:
                        raise ValueError(f"repeated index: {i}")
                    mask |= 1 << (i - 1)
            terms[mask] = parse_rational(val)
        return cls(ctx, terms)


def _mul_mask(ctx: CliffordContext, mask: int, other: int, coeff: Scalar, out: dict):
    """Accumulate coeff * E_mask * E_other into out."""
    items = [(mask, coeff)]
    for i in range(ctx.dim_v):
        if not other >> i & 1:
            continue
        table = ctx.mul_table[i]
        nxt: dict[int, Scalar] = {}
        for m, c in items:
            for mm, cc in table[m]:
                nxt[mm] = nxt.get(mm, ZERO) + c * cc
        items = [(m, c) for m, c in nxt.items() if c != 0]
        if not items:
            return
    for m, c in items:
        out[m] = out.get(m, ZERO) + c


def cliff_mul(a: Multivector, b: Multivector) -> Multivector:
    """Clifford product, satisfying v*v = Q(v) and vw + wv = B(v, w) on
    grade-1 elements."""
    a._check(b)
    ctx = a.context
    out: dict[int, Scalar] = {}
    for mb, cb in b.terms.items():
        for ma, ca in a.terms.items():
            _mul_mask(ctx, ma, mb, ca * cb, out)
    return Multivector(ctx, out)


def main_involution(a: Multivector) -> Multivector:
    """The anti-automorphism with (v_1 ... v_r)* = (-1)^r v_r ... v_1.

    On a non-orthogonal monomial the reversal is not a pure sign, so each
    monomial is re-expanded through the product tables.
    """
    ctx = a.context
    out = Multivector(ctx, {})
    for mask, c in a.terms.items():
        idxs = [i + 1 for i in range(ctx.dim_v) if mask >> i & 1]
        r = len(idxs)
        acc: dict[int, Scalar] = {0: c if r % 2 == 0 else -c}
        for i in reversed(idxs):
            nxt: dict[int, Scalar] = {}
            for m, cc in acc.items():
                for mm, c2 in ctx.mul_table[i - 1][m]:
                    nxt[mm] = nxt.get(mm, ZERO) + cc * c2
            acc = nxt
        out = out + Multivector(ctx, acc)
    return out


def spinor_norm(x: Multivector) -> Scalar:
    """The scalar x* x; raises NotInGSpinError when x* x is not scalar."""
    if not x.is_even():
        raise NotInGSpinError("spinor norm defined on the even part")
    prod = cliff_mul(main_involution(x), x)
    if not prod.is_scalar():
        raise NotInGSpinError("x* x is not a scalar")
    return prod.scalar_part()


# ---------------------------------------------------------------------------
# spin representation on the exterior algebra of W = <e_1, ..., e_n>


class SpinVector:
    """Element of the exterior algebra of W; basis indexed by subsets of
    {1, ..., n} as bitmasks."""

    __slots__ = ("context", "terms")

    def __init__(self, context: CliffordContext, terms: Mapping[int, Scalar] | None = None):
        self.context = context
        clean = {}
        for mask, c in (terms or {}).items():
            c = as_scalar(c)
            if c != 0:
                clean[int(mask)] = c
        self.terms = clean

    @classmethod
    def basis(cls, context: CliffordContext, subset_mask: int) -> "SpinVector":
        return cls(context, {subset_mask: ONE})

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, ZERO) + c
        return SpinVector(self.context, out)

    def scale(self, s) -> "SpinVector":
        s = as_scalar(s)
        return SpinVector(self.context, {m: c * s for m, c in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, SpinVector)
            and self.context == other.context
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.context.n, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mask in sorted(self.terms):
            c = format_scalar(self.terms[mask])
            name = (
                "^".join(f"e{i+1}" for i in range(self.context.n) if mask >> i & 1)
                or "1"
            )
            parts.append(f"({c})*{name}" if c != "1" else name)
        return " + ".join(parts)


def _gen_spin_action(ctx: CliffordContext, i: int, terms: dict) -> dict:
    """Action of the generator e_i on exterior-algebra terms."""
    n = ctx.n
    out: dict[int, Scalar] = {}
    if i <= n:
        bit = 1 << (i - 1)
        for mask, c in terms.items():
            if mask & bit:
                continue
            sign = -1 if _grade(mask & (bit - 1)) % 2 else 1
            m2 = mask | bit
            out[m2] = out.get(m2, ZERO) + (c if sign > 0 else -c)
    elif i == n + 1:
        for mask, c in terms.items():
            out[mask] = out.get(mask, ZERO) + (c if _grade(mask) % 2 == 0 else -c)
    else:
        p = ctx.partner(i)  # contraction pairs e_i with e_p, p <= n
        bit = 1 << (p - 1)
        for mask, c in terms.items():
            if not mask & bit:
                continue
            sign = -1 if _grade(mask & (bit - 1)) % 2 else 1
            m2 = mask & ~bit
            out[m2] = out.get(m2, ZERO) + (c if sign > 0 else -c)
    return {m: c for m, c in out.items() if c != 0}


def spin_action(x: Multivector, s: SpinVector) -> SpinVector:
    """Action of an even element on the exterior algebra: wedge for indices
    <= n, contraction for indices >= n+2, parity for e_{n+1}; extended
    multiplicatively over the monomials of x."""
    if x.context != s.context:
        raise ContextMismatchError("mismatched contexts")
    if not x.is_even():
        raise CliffordError("spin action is defined on the even part")
    ctx = x.context
    total: dict[int, Scalar] = {}
    for mask, c in x.terms.items():
        idxs = [i + 1 for i in range(ctx.dim_v) if mask >> i & 1]
        cur = {m: cc * c for m, cc in s.terms.items()}
        for i in reversed(idxs):  # rightmost generator acts first
            cur = _gen_spin_action(ctx, i, cur)
            if not cur:
                break
        for m, cc in cur.items():
            total[m] = total.get(m, ZERO) + cc
    return SpinVector(ctx, total)


def spin_matrix(x: Multivector) -> tuple[tuple, ...]:
    """Matrix of the spin action on the basis E_S, S in bitmask order;
    entry [i][j] is the E_i coefficient of x acting on E_j."""
    ctx = x.context
    dim = 1 << ctx.n
    cols = []
    for j in range(dim):
        img = spin_action(x, SpinVector.basis(ctx, j))
        cols.append([img.terms.get(i, ZERO) for i in range(dim)])
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


def beta_form(s: SpinVector, t: SpinVector) -> Scalar:
    """Bilinear form on the exterior algebra: the top-degree coefficient of
    s* wedge t.  Symmetric when n mod 4 is 0 or 3, alternating when 1 or 2."""
    if s.context != t.context:
        raise ContextMismatchError("mismatched contexts")
    n = s.context.n
    full = (1 << n) - 1
    acc = ZERO
    for ms, cs in s.terms.items():
        mt = full & ~ms
        ct = t.terms.get(mt)
        if ct is None:
            continue
        k = _grade(ms)
        sign = -1 if (k * (k + 1) // 2) % 2 else 1  # main involution on E_S
        sign *= _shuffle_sign(ms, mt, n)
        term = cs * ct
        acc = acc + (term if sign > 0 else -term)
    return acc


def _shuffle_sign(ms: int, mt: int, n: int) -> int:
    """Sign of the permutation sorting the concatenation (sorted S, sorted T)
    for disjoint S, T: parity of inversions between the blocks."""
    inv = 0
    seen_t = 0
    for i in range(n - 1, -1, -1):
        if ms >> i & 1:
            inv += seen_t
        elif mt >> i & 1:
            seen_t += 1
    return -1 if inv % 2 else 1


# ---------------------------------------------------------------------------
# GSpin membership and the vector representation


def conjugation_image(x: Multivector, v: Multivector) -> Multivector:
    """x v x*."""
    return cliff_mul(cliff_mul(x, v), main_involution(x))


def is_gspin(x: Multivector) -> bool:
    """True iff x is even, invertible, and x e_i x* is grade-1 for every
    basis vector (so conjugation preserves the quadratic space)."""
    if x.is_zero() or not x.is_even():
        return False
    try:
        norm = spinor_norm(x)
    except NotInGSpinError:
        return False
    if norm == 0:
        return False  # x* x = 0 forces x noninvertible in the even part
    ctx = x.context
    for i in range(1, ctx.dim_v + 1):
        img = conjugation_image(x, Multivector.generator(ctx, i))
        if not img.is_vector():
            return False
    return True


def gspin_to_go(x: Multivector) -> tuple[tuple[tuple, ...], Scalar]:
    """Matrix of v -> x v x* on the quadratic space in the basis e_1, ...,
    e_{2n+1}, together with the spinor norm of x.

    The matrix preserves the polar form up to the square of the reported
    similitude factor; dividing by the factor gives the special orthogonal
    image.
    """
    if not is_gspin(x):
        raise NotInGSpinError("element is not in the general spin group")
    ctx = x.context
    cols = []
    for i in range(1, ctx.dim_v + 1):
        img = conjugation_image(x, Multivector.generator(ctx, i))
        cols.append(img.vector_coords())
    matrix = tuple(
        tuple(cols[j][i] for j in range(ctx.dim_v)) for i in range(ctx.dim_v)
    )
    return matrix, spinor_norm(x)


def gram_matrix(ctx: CliffordContext) -> tuple[tuple, ...]:
    """Gram matrix of the polar form B on the basis e_1, ..., e_{2n+1}."""
    d = ctx.dim_v
    return tuple(
        tuple(ctx.b_gen(i + 1, j + 1) for j in range(d)) for i in range(d)
    )


# ---------------------------------------------------------------------------
# torus elements and Weyl representatives


def torus_element(ctx: CliffordContext, c, a: Sequence) -> Multivector:
    """The even invertible element c * prod_i (a_i^(-1) f_i + f_i') built
    from the hyperbolic idempotents f_i = e_i e_{2n+2-i}, f_i' = 1 - f_i.

    Its spin matrix is diagonal on the E_S basis with eigenvalue
    c * prod_{i in S} a_i^(-1), and its spinor norm is c^2 / (a_1 ... a_n).
    """
    c = as_scalar(c)
    avals = [as_scalar(ai) for ai in a]
    if len(avals) != ctx.n:
        raise ValueError(f"need {ctx.n} torus coordinates")
    if c == 0 or any(ai == 0 for ai in avals):
        raise ValueError("torus coordinates must be nonzero")
    acc = Multivector.scalar(ctx, c)
    one = Multivector.scalar(ctx, ONE)
    for i, ai in enumerate(avals, start=1):
        f_i = cliff_mul(
            Multivector.generator(ctx, i), Multivector.generator(ctx, ctx.partner(i))
        )
        factor = f_i.scale(scalar_inv(ai)) + (one - f_i)
        acc = cliff_mul(acc, factor)
    return acc


def weyl_representative(ctx: CliffordContext, perm: Sequence[int], signs: Sequence[int]) -> Multivector:
    """An even Clifford element whose conjugation action realizes the signed
    permutation (perm, signs) on the torus chart: conjugating
    torus_element(c, a) yields torus_element applied to the Weyl image.

    perm is a tuple of images (1-indexed): new a_i = a_{perm[i]}; signs in
    {+1, -1} invert the corresponding coordinates.
    """
    n = ctx.n
    swap_part = Multivector.scalar(ctx, ONE)
    # cycle decomposition of i -> perm[i]; within a cycle (j1 j2 ... jm) the
    # factors rep(j1,j2) * rep(j1,j3) * ... * rep(j1,jm) conjugate to the
    # cycle because the rightmost factor acts first
    seen = [False] * n
    for i in range(1, n + 1):
        if seen[i - 1]:
            continue
        cycle = []
        j = i
        while not seen[j - 1]:
            seen[j - 1] = True
            cycle.append(j)
            j = perm[j - 1]
        for jm in cycle[1:]:
            swap_part = cliff_mul(swap_part, _swap_element(ctx, cycle[0], jm))
    flip_part = Multivector.scalar(ctx, ONE)
    for i, s in enumerate(signs, start=1):
        if s == -1:
            flip_part = cliff_mul(flip_part, _flip_element(ctx, i))
    # conjugation applies the right factor first: permute, then flip
    return cliff_mul(flip_part, swap_part)


def _swap_element(ctx: CliffordContext, i: int, j: int) -> Multivector:
    """u * d with u = e_i - e_j + e_{i'} - e_{j'} and d = e_i - e_j - e_{i'}
    + e_{j'}; conjugation swaps the i and j hyperbolic planes."""
    d = ctx.dim_v
    u = [ZERO] * d
    w = [ZERO] * d
    for idx, sgn in ((i, 1), (j, -1)):
        u[idx - 1] = Fraction(sgn)
        w[idx - 1] = Fraction(sgn)
        u[ctx.partner(idx) - 1] = Fraction(sgn)
        w[ctx.partner(idx) - 1] = Fraction(-sgn)
    return cliff_mul(Multivector.vector(ctx, u), Multivector.vector(ctx, w))


def _flip_element(ctx: CliffordContext, i: int) -> Multivector:
    """(e_i - e_{i'}) e_{n+1}: conjugation inverts the i-th torus coordinate."""
    d = ctx.dim_v
    u = [ZERO] * d
    u[i - 1] = ONE
    u[ctx.partner(i) - 1] = -ONE
    return cliff_mul(
        Multivector.vector(ctx, u), Multivector.generator(ctx, ctx.n + 1)
    )


def cliff_inverse(x: Multivector) -> Multivector:
    """Inverse of a GSpin element: x* / N(x)."""
    norm = spinor_norm(x)
    if norm == 0:
        raise NotInGSpinError("spinor norm zero; no inverse via the involution")
    return main_involution(x).scale(scalar_inv(norm))
