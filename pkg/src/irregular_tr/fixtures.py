"""Built-in curves and the JSON curve format."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .algebra.params import ParamScalar
from .algebra.rational import Poly, RationalFunction, Z
from .algebra.scalar import Scalar
from .algebra.series import LaurentSeries
from .curve import CurveError, CurveSpec, LocalY, SpectralCurve

X_CIRCLE = Z + 1 / Z  # shared x for the curves with branch points z = +1, -1
X_LOCAL = Z * Z / 2


def _log_series(curve: SpectralCurve, alpha: int, order: int) -> LaurentSeries:
    """``ln z`` near a branch point with the constant ``ln z_alpha`` dropped."""
    za = curve.branch(alpha).z
    w = curve.local_offset(alpha, order + 1).scale(za.inverse())  # w/z_alpha, valuation 1
    # ln(1 + u) = sum (-1)^(m+1) u^m / m
    log1p = LaurentSeries(
        [0] + [Scalar(Fraction((-1) ** (m + 1), m)) for m in range(1, order + 1)], 0, order + 1, var="s"
    )
    return log1p.compose(w).truncate(order)


def airy() -> CurveSpec:
    return CurveSpec("airy", X_LOCAL, Z)


def bessel() -> CurveSpec:
    return CurveSpec("bessel", X_LOCAL, 1 / Z)


def legendre() -> CurveSpec:
    return CurveSpec("legendre", X_CIRCLE, Z / (Z * Z - 1))


def gauss() -> CurveSpec:
    return CurveSpec("gauss", X_CIRCLE, Z)


def des() -> CurveSpec:
    return CurveSpec("des", X_CIRCLE, Z / (Z + 1))


def gw_local() -> CurveSpec:
    return CurveSpec("gw-local", X_CIRCLE, LocalY(generator=_log_series))


FIXTURES = {
    "airy": airy,
    "bessel": bessel,
    "legendre": legendre,
    "gauss": gauss,
    "des": des,
    "gw-local": gw_local,
}


def fixture(name: str) -> CurveSpec:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise CurveError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None


def deformed_local(kind: str, top: int) -> CurveSpec:
    """``x = z^2/2`` with ``y`` a formal odd series up to ``y_top z^top``.

    ``kind`` is ``"airy"`` (``y = y_1 z + y_3 z^3 + ...``) or ``"bessel"``
    (``y = y_{-1}/z + y_1 z + ...``); every coefficient is a formal parameter.
    """
    start = 1 if kind == "airy" else -1
    if kind not in ("airy", "bessel"):
        raise ValueError(f"unknown deformation family {kind!r}")
    terms = {k: ParamScalar.var(k) for k in range(start, top + 1, 2)}
    series = LaurentSeries.from_dict(terms, top + 1, var="s", ring=ParamScalar)
    return CurveSpec(f"deformed-{kind}", X_LOCAL, LocalY(series={1: series}))


def deformation_top(kind: str, g: int, n: int) -> int:
    """Highest y_k that can influence omega_{g,n} on a deformed local curve."""
    if kind == "airy":
        return max(6 * g - 8 + 3 * n, 1) + 2
    return max(2 * g - 4 + n, -1) + 2


# ---------------------------------------------------------------------------
# JSON

def _scalar(data: Any) -> Scalar:
    return Scalar.from_json(data)


def _poly(data: Any) -> Poly:
    return Poly([_scalar(c) for c in data])


def curve_from_json(data: dict) -> CurveSpec:
    """Parse the curve format ``{name, x: {num, den}, y: {rational | local}, signs}``."""
    try:
        name = str(data["name"])
        x = RationalFunction(_poly(data["x"]["num"]), _poly(data["x"].get("den", ["1"])))
        ydata = data["y"]
        if "rational" in ydata:
            r = ydata["rational"]
            y: RationalFunction | LocalY = RationalFunction(_poly(r["num"]), _poly(r.get("den", ["1"])))
        elif "local" in ydata:
            series = {}
            for entry in ydata["local"]:
                coeffs = [_scalar(c) for c in entry["coeffs"]]
                low = int(entry["low"])
                series[int(entry["branch"])] = LaurentSeries(coeffs, low, low + len(coeffs), var="s")
            y = LocalY(series=series)
        else:
            raise CurveError("y must be given as 'rational' or 'local'")
        signs_raw = data.get("signs", [])
        if isinstance(signs_raw, dict):
            signs = {int(k): int(v) for k, v in signs_raw.items()}
        else:
            signs = {i + 1: int(v) for i, v in enumerate(signs_raw)}
        if any(v not in (1, -1) for v in signs.values()):
            raise CurveError("branch signs must be +1 or -1")
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, CurveError):
            raise
        raise CurveError(f"malformed curve description: {exc}") from exc
    return CurveSpec(name, x, y, signs)


def curve_to_json(spec: CurveSpec) -> dict:
    out: dict[str, Any] = {"name": spec.name, "x": spec.x.to_json()}
    if isinstance(spec.y, RationalFunction):
        out["y"] = {"rational": spec.y.to_json()}
    elif spec.y.series is not None:
        out["y"] = {
            "local": [
                {"branch": b, "low": s.low, "coeffs": [c.to_json() for c in s.coeffs]}
                for b, s in sorted(spec.y.series.items())
            ]
        }
    else:
        raise CurveError(f"curve {spec.name!r} has a generated y and cannot be serialized")
    out["signs"] = {str(k): v for k, v in sorted(spec.signs.items())}
    return out


def load_curve(source: str) -> CurveSpec:
    """A fixture name, or a path to a curve JSON file."""
    if source in FIXTURES:
        return fixture(source)
    try:
        with open(source, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CurveError(f"cannot read curve file {source!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CurveError(f"curve file {source!r} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise CurveError("curve JSON must be an object")
    return curve_from_json(data)
