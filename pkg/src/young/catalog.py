"""Named Young functions used by the tests, scripts and acceptance suite."""

from __future__ import annotations

from .funcrep import Convex, Id, IdPlusSoft, Log1p, Power, PowerOf, Scale, Sum, WeightVector, YoungExpr

ATOMS: dict[str, YoungExpr] = {
    "id": Id(),
    "power_half": Power(0.5),
    "log1p": Log1p(),
    "id_plus_soft": IdPlusSoft(1.0),
}


def catalog() -> dict[str, YoungExpr]:
    """Ten representative members: atoms, scalings, a composition, a sum and a mixture."""
    return {
        "id": Id(),
        "power_half": Power(0.5),
        "power_quarter": Power(0.25),
        "log1p": Log1p(),
        "id_plus_soft": IdPlusSoft(1.0),
        "scaled_id": Scale(Id(), 2.0),
        "scaled_sqrt": Scale(Power(0.5), 2.0),
        "sqrt_log1p": PowerOf(0.5, Log1p()),
        "id_plus_log1p": Sum((Id(), Log1p())),
        "mix_id_sqrt": Convex(WeightVector((0.3, 0.7)), (Id(), Power(0.5))),
    }


def strictly_concave(cat: dict[str, YoungExpr] | None = None) -> dict[str, YoungExpr]:
    """Members whose density is not constant."""
    cat = catalog() if cat is None else cat
    return {k: v for k, v in cat.items() if not v.constant_density()}


def slope_designated() -> dict[str, YoungExpr]:
    """Six functions covering both sides of the positive-slope dichotomy."""
    return {
        "id": Id(),
        "id_plus_soft": IdPlusSoft(1.0),
        "scaled_id": Scale(Id(), 0.5),
        "id_plus_log1p": Sum((Id(), Log1p())),
        "power_half": Power(0.5),
        "log1p": Log1p(),
    }


def seeds_b1() -> list[YoungExpr]:
    """Members of the b = 1 fixed family used to build hierarchy levels."""
    return [
        Power(0.5),
        Scale(Log1p(), 1.0 / Log1p()(1.0)),
        Scale(IdPlusSoft(1.0), 1.0 / IdPlusSoft(1.0)(1.0)),
        Id(),
    ]


__all__ = ["ATOMS", "catalog", "strictly_concave", "slope_designated", "seeds_b1"]
