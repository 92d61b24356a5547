"""Leading pole behaviour of correlators at each branch point.

At a branch point alpha the coefficients of the deepest poles, all arguments
at alpha, are those of the Airy or Bessel curve scaled by
``eta_alpha^((2-2g-n)/2)``.  The square root is fixed by ``y_min`` (``y_1`` or
``y_{-1}``), which carries the sign choice made for the branch.

The comparison is made in the local monomial basis ``ds/s^(d+1)``.  In the
V basis an irregular point next to a regular one also receives deeper terms
through the basis change, so the statement is local, not about V-coefficients.
"""

from __future__ import annotations

from .curve import CurveSpec, SpectralCurve
from .deformation import _odd_multisets
from .givental import assemble_decomposition, r_matrix
from .recursion import TopologicalRecursion
from .tables import local_engine


def top_weight(kind: str, g: int, n: int) -> int:
    """``sum (2k_i + 1)`` of the deepest poles."""
    return 2 * g - 2 + n if kind == "irregular" else 6 * g - 6 + 3 * n


def leading_asymptotics_check(
    curve: SpectralCurve, g: int, n: int, engine: TopologicalRecursion | None = None
) -> dict:
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"(g, n) = ({g}, {n}) is unstable")
    engine = engine or TopologicalRecursion(curve)
    corr = engine.correlator(g, n, "xi")
    zero = curve.ring.coerce(0)
    branches = []
    for alpha in curve.labels:
        kind = curve.branch(alpha).kind
        family = "bessel" if kind == "irregular" else "airy"
        base = local_engine(family).correlator(g, n, "xi")
        scale = curve.y_min(alpha) ** (2 - 2 * g - n)
        mismatches = []
        compared = 0
        for ds in _odd_multisets(n, top_weight(kind, g, n), 1):
            if sum(ds) != top_weight(kind, g, n):
                continue
            compared += 1
            ks = tuple((d - 1) // 2 for d in ds)
            expected = scale * base.coeffs.get(tuple((k, 1) for k in ks), zero)
            actual = corr.coeffs.get(tuple((k, alpha) for k in ks), zero)
            if actual != expected:
                mismatches.append({"k": list(ks), "expected": str(expected), "actual": str(actual)})
        branches.append(
            {
                "branch": alpha,
                "kind": kind,
                "eta": str(curve.eta(alpha)),
                "sqrt_eta": str(curve.y_min(alpha)),
                "compared": compared,
                "ok": not mismatches,
                "mismatches": mismatches,
            }
        )
    return {"g": g, "n": n, "ok": all(b["ok"] for b in branches), "branches": branches}


def companion_check(spec: CurveSpec, g_max: int, n_max: int) -> dict:
    """On the trivial-kernel companion the partition function is the rescaled product of base factors."""
    companion = spec.companion().build()
    identity = r_matrix(companion, 4).R.is_identity()
    report = assemble_decomposition(companion, g_max, n_max, companion.spec.name)
    return {"curve": companion.spec.name, "r_identity": identity, "ok": identity and report.ok, "decomposition": report.to_json()}
