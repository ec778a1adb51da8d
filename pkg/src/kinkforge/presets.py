"""Named polynomials f for which W = |f|^2 has explicitly known kinks."""

from .holomorphic_potential import ComplexPoly

_FIXED = {
    "phi4": [-1.0, 0.0, 1.0],  # z^2 - 1
    "iphi4": [1.0, 0.0, 1.0],  # z^2 + 1
    "triple": [0.0, -1.0, 0.0, 1.0],  # z^3 - z
}


def parse_complex(token):
    """Parse '1', '-i', '0.5+2i', '3j' and similar into a complex number."""
    t = token.strip().replace(" ", "").replace("i", "j")
    if t in ("j", "+j", "-j"):
        t = t.replace("j", "1j")
    elif t.endswith("j") and t[-2:-1] in ("+", "-"):
        t = t[:-1] + "1j"
    return complex(t)


def product(*points):
    """f(z) = prod (z - a_i), so W is the product of squared distances to the a_i."""
    return ComplexPoly.from_roots(points)


def presets():
    return sorted(_FIXED) + ["product:a1,a2,..."]


def preset(name):
    """Look up a preset; ``product:a1,...,an`` builds prod (z - a_i)."""
    if name in _FIXED:
        return ComplexPoly(_FIXED[name])
    if name.startswith("product:"):
        pts = [parse_complex(tok) for tok in name.split(":", 1)[1].split(",") if tok.strip()]
        if not pts:
            raise ValueError("product preset needs at least one point")
        return product(*pts)
    raise ValueError(f"unknown preset {name!r}; known: {', '.join(presets())}")
