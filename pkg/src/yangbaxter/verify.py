"""Residual computation for every identity in the workbench.

Symbolic mode produces identically-zero certificates: each residual is a
sparse tensor of exact rational functions, and "pass" means every
coefficient is exactly zero.  Numeric mode evaluates the same formulas
at seeded random complex sample points and reports the largest residual
magnitude.  Verifiers never mutate their inputs; failure reports carry
the lexicographically least nonzero coefficient as a witness.
"""

from __future__ import annotations

import cmath
import json
import random
from dataclasses import asdict, dataclass

from .scalars import X1, X2, Y1, Y2, log_point, rf
from .series import expand_in_u
from .tensors import Tensor2
from .builders import build_r_ts, hat_r

# Slot substitutions: the canonical two-parameter matrix carries (X1, Y1);
# copies at shifted arguments are produced by exact monomial substitution.
SUB_MINUS_UPRIME = {"X1": X2 ** -1}
SUB_U_PLUS_UPRIME = {"X1": X1 * X2}
SUB_UPRIME = {"X1": X2}
SUB_V_PLUS_VPRIME = {"Y1": Y1 * Y2}
SUB_VPRIME = {"Y1": Y2}
SUB_NEG_U = {"X1": X1 ** -1}
SUB_NEG_V = {"Y1": Y1 ** -1}


@dataclass
class VerifyReport:
    """Structured outcome of one identity check."""

    identity: str
    mode: str
    result: str
    witness: dict | None = None
    samples: int | None = None
    resamples: int | None = None
    tolerance: float | None = None
    max_abs_residual: float | None = None
    provenance: dict | None = None

    @property
    def passed(self):
        return self.result == "pass"

    def as_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)


def _witness(tensor):
    w = tensor.lex_witness()
    if w is None:
        return None
    key, value = w
    return {"index": list(key), "value": str(value)}


def report_from_residual(identity, residual, provenance=None):
    """Wrap a symbolic residual tensor into a pass/fail report."""
    ok = residual.is_zero()
    return VerifyReport(
        identity=identity,
        mode="symbolic",
        result="pass" if ok else "fail",
        witness=None if ok else _witness(residual),
        provenance=provenance,
    )


def _commutator(a, b):
    return a.mul(b) - b.mul(a)


def cybe_residual(r):
    """[r12, r13] + [r12, r23] + [r13, r23] for a constant r."""
    r12, r13, r23 = r.embed(12), r.embed(13), r.embed(23)
    return _commutator(r12, r13) + _commutator(r12, r23) + _commutator(r13, r23)


def cybe_spectral_residual(r):
    """Spectral CYBE residual for r = r(Y1).

    Slots carry arguments x, x+y, y realized as Y1, Y1*Y2, Y2; the input
    must not involve the other formal symbols.
    """
    from .tensors import variables_used

    extra = variables_used(r) - {"Y1"}
    if extra:
        raise ValueError(f"spectral CYBE input must depend on Y1 only, found {sorted(extra)}")
    a = r.embed(12)
    b = r.substitute(SUB_V_PLUS_VPRIME).embed(13)
    c = r.substitute(SUB_VPRIME).embed(23)
    return _commutator(a, b) + _commutator(a, c) + _commutator(b, c)


def unitarity_check(r, kind, provenance=None):
    """Classical r(v) + r^21(-v) = 0, associative r(u,v) + r^21(-u,-v) = 0."""
    if kind == "classical":
        flipped = r.flip21().substitute(SUB_NEG_V)
    elif kind == "associative":
        flipped = r.flip21().substitute({**SUB_NEG_U, **SUB_NEG_V})
    else:
        raise ValueError("kind must be 'classical' or 'associative'")
    return report_from_residual(
        f"unitarity_{kind}", r.map_scalars(rf) + flipped, provenance
    )


def qybe_residual(R):
    """R12 R13 R23 - R23 R13 R12 for a constant quantum matrix."""
    r12, r13, r23 = R.embed(12), R.embed(13), R.embed(23)
    return r12.mul(r13).mul(r23) - r23.mul(r13).mul(r12)


def qybe_spectral_residual(R):
    """Spectral QYBE residual for a Baxterized R(q, v)."""
    a = R.embed(12)
    b = R.substitute(SUB_V_PLUS_VPRIME).embed(13)
    c = R.substitute(SUB_VPRIME).embed(23)
    return a.mul(b).mul(c) - c.mul(b).mul(a)


def hecke_residual(R):
    """(PR - q)(PR + q^-1) with q = X1^n."""
    n = R.n
    q = rf(1) * X1**n
    qinv = rf(1) * X1**-n
    m = Tensor2.perm(n).mul(R.map_scalars(rf))
    ident = Tensor2.identity(n)
    return (m - ident.scale(q)).mul(m + ident.scale(qinv))


def _aybe_slots(r):
    """The six substituted copies used by the two-parameter residuals."""
    return {
        "A": r.substitute(SUB_MINUS_UPRIME),                       # (-u', v)
        "B": r.substitute({**SUB_U_PLUS_UPRIME, **SUB_V_PLUS_VPRIME}),  # (u+u', v+v')
        "C": r.substitute({**SUB_U_PLUS_UPRIME, **SUB_VPRIME}),    # (u+u', v')
        "D": r.map_scalars(rf),                                    # (u, v)
        "E": r.substitute(SUB_V_PLUS_VPRIME),                      # (u, v+v')
        "F": r.substitute({**SUB_UPRIME, **SUB_VPRIME}),           # (u', v')
    }


def aybe_residual(r):
    """r12(-u',v) r13(u+u',v+v') - r23(u+u',v') r12(u,v) + r13(u,v+v') r23(u',v')."""
    s = _aybe_slots(r)
    return (
        s["A"].embed(12).mul(s["B"].embed(13))
        - s["C"].embed(23).mul(s["D"].embed(12))
        + s["E"].embed(13).mul(s["F"].embed(23))
    )


def aybe_reversed_residual(r):
    """The same three products with the factor order reversed."""
    s = _aybe_slots(r)
    return (
        s["B"].embed(13).mul(s["A"].embed(12))
        - s["D"].embed(12).mul(s["C"].embed(23))
        + s["F"].embed(23).mul(s["E"].embed(13))
    )


def aybe_commutator_sum(r):
    """[r12(-u',v), r13(u+u',v+v')] + [r12(u,v), r23(u+u',v')] + [r13(u,v+v'), r23(u',v')].

    Identically equal to aybe_residual - aybe_reversed_residual, and zero
    for unitary solutions.
    """
    s = _aybe_slots(r)
    return (
        _commutator(s["A"].embed(12), s["B"].embed(13))
        + _commutator(s["D"].embed(12), s["C"].embed(23))
        + _commutator(s["E"].embed(13), s["F"].embed(23))
    )


def lift_obstruction(r):
    """Fully traceless projection of r12 r13 - r23 r12 + r13 r23.

    Zero exactly when the constant matrix admits a two-parameter lift.
    """
    r12, r13, r23 = r.embed(12), r.embed(13), r.embed(23)
    combo = r12.mul(r13) - r23.mul(r12) + r13.mul(r23)
    return combo.project_traceless((1, 2, 3))


def tensor_u_coefficient(r, n, power, order=0):
    """Tensor of u^power coefficients of an entrywise u-expansion."""
    out = {}
    for key, value in r.coeffs.items():
        c = expand_in_u(rf(value), n, order).coeff(power)
        if c:
            out[key] = c
    return Tensor2(r.n, out)


def check_lift(r, t, s, provenance=None):
    """Laurent data of a two-parameter matrix at u = 0.

    Passes when the u^-1 coefficient is 1 (x) 1 and the u^0 coefficient
    equals the spectral lift of the classical matrix for (t, s).
    """
    n = t.n
    pole = tensor_u_coefficient(r, n, -1)
    const = tensor_u_coefficient(r, n, 0)
    diff_pole = pole - Tensor2.identity(n).map_scalars(rf)
    diff_const = const - hat_r(build_r_ts(t, s))
    if not diff_pole.is_zero():
        return VerifyReport(
            "lift", "symbolic", "fail", witness=_witness(diff_pole),
            provenance=provenance,
        )
    if not diff_const.is_zero():
        return VerifyReport(
            "lift", "symbolic", "fail", witness=_witness(diff_const),
            provenance=provenance,
        )
    return VerifyReport("lift", "symbolic", "pass", provenance=provenance)


def check_r01(r0, r1, provenance=None):
    """Residual of the order-one compatibility between r0 and r1.

    r0_12(v) r0_13(v+v') - r0_23(v') r0_12(v) + r0_13(v+v') r0_23(v')
    must equal r1_12(v) + r1_23(v') + r1_13(v+v').
    """
    a = r0.embed(12)
    b = r0.substitute(SUB_V_PLUS_VPRIME).embed(13)
    c = r0.substitute(SUB_VPRIME).embed(23)
    lhs = a.mul(b) - c.mul(a) + b.mul(c)
    rhs = (
        r1.embed(12)
        + r1.substitute(SUB_VPRIME).embed(23)
        + r1.substitute(SUB_V_PLUS_VPRIME).embed(13)
    )
    return report_from_residual("r01", lhs - rhs, provenance)


def pr_limit_check(r, n, provenance=None):
    """Project both legs away from the identity and take u -> 0.

    The limit must exist (pole killed by the projection) and be a unitary
    spectral CYBE solution; a surviving pole raises PoleOrderError via a
    nonzero u^-1 coefficient.
    """
    from .scalars import PoleOrderError

    projected = r.map_scalars(rf).project_traceless((1, 2))
    pole = tensor_u_coefficient(projected, n, -1)
    if not pole.is_zero():
        raise PoleOrderError("pole survives the traceless projection")
    rbar = tensor_u_coefficient(projected, n, 0)
    residual = cybe_spectral_residual(rbar)
    unit = unitarity_check(rbar, "classical")
    ok = residual.is_zero() and unit.passed
    witness = None
    if not residual.is_zero():
        witness = _witness(residual)
    elif not unit.passed:
        witness = unit.witness
    return VerifyReport(
        "pr_limit", "symbolic", "pass" if ok else "fail",
        witness=witness, provenance=provenance,
    )


# ---------------------------------------------------------------------------
# numeric mode

GUARD_DISTANCE = 1e-3
LOG_BAND = (0.3, 1.5)


def _sample(rng):
    """One complex number with modulus in the sampling band."""
    radius = rng.uniform(*LOG_BAND)
    angle = rng.uniform(0.0, 2.0 * cmath.pi)
    return radius * cmath.exp(1j * angle)


def _clear_of_poles(values):
    """Keep every spectral denominator bounded away from zero."""
    for z in values:
        for sign in (1, -1):
            if abs(1 - cmath.exp(sign * z)) < GUARD_DISTANCE:
                return False
    return True


def _numeric_tensors(identity, tensors, n, point):
    """Evaluate the inputs at a sample point and assemble residual tensors.

    Returns (residual, scale): scale is the largest intermediate
    coefficient magnitude, used for the relative tolerance.
    """
    u, up, v, vp = point

    def ev(t, uu, vv):
        return t.evaluate(log_point(uu, up, vv, vp, n))

    if identity == "aybe":
        r = tensors["r"]
        a = ev(r, -up, v).embed(12)
        b = ev(r, u + up, v + vp).embed(13)
        c = ev(r, u + up, vp).embed(23)
        d = ev(r, u, v).embed(12)
        e = ev(r, u, v + vp).embed(13)
        f = ev(r, up, vp).embed(23)
        parts = [a.mul(b), c.mul(d), e.mul(f)]
        residual = parts[0] - parts[1] + parts[2]
    elif identity == "qybe":
        R = ev(tensors["R"], u, v)
        r12, r13, r23 = R.embed(12), R.embed(13), R.embed(23)
        parts = [r12.mul(r13).mul(r23), r23.mul(r13).mul(r12)]
        residual = parts[0] - parts[1]
    elif identity == "qybe_spectral":
        R = tensors["R"]
        a = ev(R, u, v).embed(12)
        b = ev(R, u, v + vp).embed(13)
        c = ev(R, u, vp).embed(23)
        parts = [a.mul(b).mul(c), c.mul(b).mul(a)]
        residual = parts[0] - parts[1]
    elif identity == "cybe_spectral":
        r = tensors["r"]
        a = ev(r, u, v).embed(12)
        b = ev(r, u, v + vp).embed(13)
        c = ev(r, u, vp).embed(23)
        parts = [a.mul(b), b.mul(a), a.mul(c), c.mul(a), b.mul(c), c.mul(b)]
        residual = (
            (parts[0] - parts[1]) + (parts[2] - parts[3]) + (parts[4] - parts[5])
        )
    elif identity == "hecke":
        R = ev(tensors["R"], u, v)
        q = cmath.exp(u / 2)
        m = Tensor2.perm(n, one=1.0 + 0j).mul(R)
        ident = Tensor2.identity(n, one=1.0 + 0j)
        parts = [m.mul(m)]
        residual = (m - ident.scale(q)).mul(m + ident.scale(1 / q))
    elif identity == "unitarity_assoc":
        r = tensors["r"]
        direct = ev(r, u, v)
        flipped = ev(r, -u, -v).flip21()
        parts = [direct]
        residual = direct + flipped
    else:
        raise ValueError(f"unknown numeric identity {identity!r}")
    scale = max(part.max_abs() for part in parts)
    return residual, scale


def numeric_residual(identity, tensors, n, samples, tolerance, seed, provenance=None):
    """Sampled residual check; pass iff max |residual| < tolerance * scale.

    The scale is max(1, largest intermediate coefficient) per the
    relative-tolerance convention; sample points whose spectral
    denominators come within 1e-3 of a zero are rejected and counted.
    """
    rng = random.Random(seed)
    worst = 0.0
    resamples = 0
    scale = 1.0
    for _ in range(samples):
        while True:
            point = tuple(_sample(rng) for _ in range(4))
            u, up, v, vp = point
            if _clear_of_poles((u, up, u + up, v, vp, v + vp)):
                break
            resamples += 1
        residual, sample_scale = _numeric_tensors(identity, tensors, n, point)
        scale = max(scale, sample_scale)
        worst = max(worst, residual.max_abs())
    ok = worst < tolerance * scale
    return VerifyReport(
        identity=identity,
        mode="numeric",
        result="pass" if ok else "fail",
        samples=samples,
        resamples=resamples,
        tolerance=tolerance,
        max_abs_residual=worst,
        provenance=provenance,
    )
