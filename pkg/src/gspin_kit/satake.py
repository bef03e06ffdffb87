"""Unramified local parameters and their invariants: spin/standard Euler
factors, Frobenius-power trace values, normalized Hecke character values,
parameter twisting, characteristic-polynomial checks, and truncated partial
L-values over a JSONL parameter store.

A parameter is a residue cardinality q together with a canonical torus
chart point; everything except partial_l_value is exact.  Powers of q with
quarter-integer exponents are kept symbolic in QPowerValue rather than
collapsed to a real number.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import conjugacy, rootdata
from .algebra_core import UniPoly, charpoly_to_power_sums, find_twist_scalars, poly_from_inverse_roots, poly_from_roots, poly_mul
from .conjugacy import GSpinTorusPoint
from .scalars import ONE, Scalar, ZERO, abs_bound, as_scalar, format_scalar, parse_rational, scalar_key

REPRESENTATIONS = ("spin", "std")


class ConvergenceError(ValueError):
    """The requested evaluation point is outside the convergence region."""


class StoreError(ValueError):
    """Malformed or inconsistent JSONL parameter store."""


@dataclass(frozen=True)
class QPowerValue:
    """Exact value mantissa * q^q_exponent; the exponent is a rational with
    denominator dividing 4, kept symbolic."""

    mantissa: Scalar
    q: int
    q_exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "mantissa", as_scalar(self.mantissa))
        object.__setattr__(self, "q_exponent", Fraction(self.q_exponent))
        if self.q < 2:
            raise ValueError("q must be at least 2")
        if self.q_exponent.denominator not in (1, 2, 4):
            raise ValueError("q-exponent denominator must divide 4")

    def as_float(self) -> float:
        from .scalars import QuadExt

        m = self.mantissa
        mf = float(m) if isinstance(m, Fraction) else m.embeddings()[0]
        return mf * float(self.q) ** float(self.q_exponent)

    def serialize(self) -> dict:
        return {
            "mantissa": format_scalar(self.mantissa),
            "q": self.q,
            "q_exponent": format_scalar(self.q_exponent),
        }

    def __repr__(self):
        return f"{format_scalar(self.mantissa)} * {self.q}^({self.q_exponent})"


@dataclass(frozen=True)
class SatakeParam:
    """Unramified local parameter: residue cardinality q and the canonical
    representative of a Weyl orbit of torus chart points."""

    n: int
    q: int
    cls: GSpinTorusPoint

    def __post_init__(self):
        if self.q < 2:
            raise ValueError("q must be a prime power >= 2")
        if self.cls.n != self.n:
            raise ValueError("rank mismatch between parameter and class")
        object.__setattr__(self, "cls", conjugacy.canonicalize(self.cls))

    def serialize(self, label: str | None = None) -> dict:
        out = {"n": self.n, "q": self.q}
        out.update({k: v for k, v in self.cls.serialize().items() if k != "n"})
        if label is not None:
            out["label"] = label
        return out

    @classmethod
    def deserialize(cls, data) -> "SatakeParam":
        point = GSpinTorusPoint.deserialize(
            {"n": data["n"], "c": data["c"], "a": data["a"]}
        )
        return cls(int(data["n"]), int(data["q"]), point)


@dataclass(frozen=True)
class EulerFactor:
    """Local factor as a polynomial in T = q^(-s): prod (1 - lambda T) over
    the eigenvalue multiset of the chosen representation."""

    rep: str
    poly: UniPoly
    q: int

    def __post_init__(self):
        if self.rep not in REPRESENTATIONS:
            raise ValueError(f"rep must be one of {REPRESENTATIONS}")
        if self.poly.is_zero() or self.poly.coeffs[0] != 1:
            raise ValueError("Euler factor must have constant term 1")

    @property
    def degree(self) -> int:
        return self.poly.degree

    def serialize(self) -> dict:
        return {"rep": self.rep, "q": self.q, "poly": self.poly.serialize()}

    def __repr__(self):
        return str(self.poly).replace("X", "T")


def _eigenvalues(p: SatakeParam, rep: str) -> list:
    if rep == "spin":
        return conjugacy.spin_eigenvalues(p.cls)
    if rep == "std":
        return conjugacy.std_eigenvalues(p.cls)
    raise ValueError(f"unknown representation {rep!r}")


def spin_euler_factor(p: SatakeParam) -> EulerFactor:
    return EulerFactor("spin", poly_from_inverse_roots(_eigenvalues(p, "spin")), p.q)


def std_euler_factor(p: SatakeParam) -> EulerFactor:
    return EulerFactor("std", poly_from_inverse_roots(_eigenvalues(p, "std")), p.q)


def euler_factor(p: SatakeParam, rep: str) -> EulerFactor:
    return spin_euler_factor(p) if rep == "spin" else std_euler_factor(p)


def kottwitz_trace(p: SatakeParam, j: int) -> QPowerValue:
    """Trace of the j-th Frobenius power against the spin representation,
    carrying the Kottwitz normalization q^(j n(n+1)/4)."""
    if j < 1:
        raise ValueError("j must be a positive integer")
    mantissa = ZERO
    for lam in conjugacy.spin_eigenvalues(p.cls):
        mantissa = mantissa + lam**j
    return QPowerValue(mantissa, p.q, Fraction(j * p.n * (p.n + 1), 4))


def rho_pairing(sigma: rootdata.WeightVector) -> Fraction:
    """Pairing of the dominant weight with the symplectic half-sum of
    positive roots, through the duality of character lattices; this is the
    q-exponent of the normalized Hecke character."""
    if sigma.tag.family != "GSpin":
        raise ValueError("expects a GSpin weight")
    n = sigma.tag.n
    s = sigma.coords[0]
    return Fraction(n * (n + 1), 4) * s + sum(
        (Fraction(n - i) * sigma.coords[1 + i] for i in range(n)), Fraction(0)
    )


def hecke_character_value(sigma: rootdata.WeightVector, p: SatakeParam) -> QPowerValue:
    """Value of the normalized Hecke operator attached to a dominant weight:
    q^<rho, sigma> times the highest-weight character at the class."""
    if not rootdata.is_dominant(sigma):
        raise ValueError("weight must be dominant")
    chi = rootdata.weyl_character(sigma)
    mantissa = chi.evaluate((p.cls.c,) + p.cls.a)
    return QPowerValue(mantissa, p.q, rho_pairing(sigma))


def twist_param(p: SatakeParam, lam) -> SatakeParam:
    """Scale the class's c coordinate (all spin eigenvalues) by lam."""
    lam = as_scalar(lam)
    if lam == 0:
        raise ValueError("twist scalar must be nonzero")
    return SatakeParam(p.n, p.q, GSpinTorusPoint(p.n, p.cls.c * lam, p.cls.a))


def find_twist(p1: SatakeParam, p2: SatakeParam) -> set:
    """All ground-field lambda with spin factors of twist_param(p2, lambda)
    equal to those of p1."""
    m = 1 << p1.n
    return find_twist_scalars(
        conjugacy.spin_charpoly(p1.cls), conjugacy.spin_charpoly(p2.cls), m
    )


def charpoly_check(p: SatakeParam, claimed: UniPoly, rep: str) -> bool:
    """True iff the claimed monic polynomial is the characteristic polynomial
    of the chosen representation of the class."""
    eigs = _eigenvalues(p, rep)
    if not claimed.is_monic() or claimed.degree != len(eigs):
        raise ValueError(f"claimed polynomial must be monic of degree {len(eigs)}")
    return claimed == poly_from_roots(eigs)


# ---------------------------------------------------------------------------
# truncated partial L-values


def _convergence_bound(store: Sequence[SatakeParam], rep: str) -> float:
    """1 + max over the store of log_q of the largest archimedean eigenvalue
    size; the Euler product converges absolutely to the right of it."""
    import math

    bound = 1.0
    for p in store:
        mx = max(abs_bound(lam) for lam in _eigenvalues(p, rep))
        if mx > 1.0:
            bound = max(bound, 1.0 + math.log(mx) / math.log(p.q))
    return bound


def partial_l_value(
    store: Sequence[SatakeParam],
    rep: str,
    s: float,
    cutoff: int,
    threads: int | None = None,
) -> tuple[float, list[dict]]:
    """Truncated Euler product prod_{q <= cutoff} 1/factor(q^(-s)), evaluated
    in binary floating point with a 96-bit working mantissa.

    Returns the product and a ledger with each factor's exact polynomial.
    The reduction order is deterministic: ascending q, then canonical class
    order.  Raises ConvergenceError when s is not to the right of the
    absolute-convergence bound of the store.
    """
    import mpmath

    sf = float(s)
    bound = _convergence_bound(store, rep)
    if sf <= bound:
        raise ConvergenceError(
            f"s = {sf} is not above the convergence bound {bound:.6f}"
        )
    chosen = [
        p
        for p in store
        if p.q <= cutoff
    ]
    chosen.sort(key=lambda p: (p.q, scalar_key(p.cls.c), tuple(scalar_key(x) for x in p.cls.a)))

    def one_factor(p: SatakeParam) -> tuple[dict, "mpmath.mpf"]:
        factor = euler_factor(p, rep)
        with mpmath.workprec(96):
            t = mpmath.mpf(p.q) ** (-mpmath.mpf(sf))
            val = mpmath.mpf(0)
            for c in reversed(factor.poly.coeffs):
                val = val * t + float(c)
            inv = 1 / val
        entry = factor.serialize()
        entry["value"] = float(inv)
        return entry, inv

    nthreads = threads if threads is not None else _thread_cap()
    if nthreads > 1 and len(chosen) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            results = list(pool.map(one_factor, chosen))
    else:
        results = [one_factor(p) for p in chosen]

    import mpmath as mp

    with mp.workprec(96):
        total = mp.mpf(1)
        for _, inv in results:
            total *= inv
        value = float(total)
    return value, [entry for entry, _ in results]


def _thread_cap() -> int:
    raw = os.environ.get("GSPIN_KIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# JSONL parameter store


@dataclass(frozen=True)
class StoreRecord:
    param: SatakeParam
    label: str | None = None

    def serialize(self) -> dict:
        return self.param.serialize(self.label)


def parse_store_line(line: str) -> StoreRecord:
    try:
        data = json.loads(line)
    except json.JSONDecodeError as e:
        raise StoreError(f"invalid JSON record: {e}") from e
    try:
        param = SatakeParam.deserialize(data)
    except (KeyError, ValueError) as e:
        raise StoreError(f"invalid store record {line.strip()!r}: {e}") from e
    label = data.get("label")
    return StoreRecord(param, label)


def load_store(lines: Iterable[str]) -> list[StoreRecord]:
    """Parse a JSONL store; rejects duplicate (q, label) pairs."""
    records = []
    seen = set()
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            rec = parse_store_line(line)
        except StoreError as e:
            raise StoreError(f"line {lineno}: {e}") from e
        key = (rec.param.q, rec.label)
        if key in seen:
            raise StoreError(f"line {lineno}: duplicate (q, label) pair {key}")
        seen.add(key)
        records.append(rec)
    return records


def load_store_file(path: str) -> list[StoreRecord]:
    with open(path, "r", encoding="utf-8") as fh:
        return load_store(fh)


def dump_store(records: Sequence[StoreRecord]) -> str:
    return "\n".join(json.dumps(r.serialize(), sort_keys=True) for r in records) + "\n"
