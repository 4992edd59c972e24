"""Degree one: the Casson-Walker invariant of a 2-clover."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .clover import CloverData, TrilinearForm
from .diagrams import THETA
from .errors import ValidationError
from .splitting import linking_number_diagram


@dataclass(frozen=True)
class ComplementaryClover:
    """A 2-clover given by the forms of its two pieces in dual bases.

    The bases of the two Lagrangians are dual for the boundary intersection
    form, so the cross-linking matrix is the identity.
    """

    genus: int
    form_a: TrilinearForm
    form_b: TrilinearForm

    def __post_init__(self):
        for name in ("form_a", "form_b"):
            if getattr(self, name).genus != self.genus:
                raise ValidationError(f"{name} has genus {getattr(self, name).genus}, expected {self.genus}")

    def as_clover(self):
        g = self.genus
        ident = [[Fraction(int(a == b)) for b in range(g)] for a in range(g)]
        return CloverData((self.form_a, self.form_b), {(1, 2): ident})

    @classmethod
    def from_json(cls, doc):
        if not isinstance(doc, dict) or "genus" not in doc:
            raise ValidationError("complementary clover: expected {genus, form_a, form_b}")
        g = doc["genus"]
        if not isinstance(g, int) or isinstance(g, bool) or g < 0:
            raise ValidationError("genus: expected a non-negative integer")
        return cls(
            g,
            TrilinearForm.from_json(g, doc.get("form_a", []), "form_a"),
            TrilinearForm.from_json(g, doc.get("form_b", []), "form_b"),
        )


def lambda_closed_form(cc):
    """``-2 * sum over i<j<k of I_A(i,j,k) * I_B(i,j,k)``."""
    total = Fraction(0)
    for t in combinations(range(1, cc.genus + 1), 3):
        total += cc.form_a(*t) * cc.form_b(*t)
    return -2 * total


def lambda_via_theta(cc):
    """``lk(D; theta) / 6`` computed by the general splitting engine."""
    return linking_number_diagram(cc.as_clover(), THETA) / 6


def walker_conversions(lambda_w):
    """From Walker's normalisation to ``(lambda, theta coefficient of Z_1)``."""
    lambda_w = Fraction(lambda_w)
    return lambda_w / 2, lambda_w / 4
