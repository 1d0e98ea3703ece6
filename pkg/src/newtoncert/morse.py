"""Singularity classification: never-Morse versus generically-Morse supports.

A support polytope (or Newton polyhedron) is generically Morse exactly
when the barycenter of the quadratic simplex lies in it; the certificate
is the matching or cover produced for its quadratic restriction.  Concrete
functions are tested through the exact Hessian determinant at the origin.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .poly import SparsePolynomial, determinant, hessian_at_zero, monomial
from .polytope import (
    ConvexCombination,
    LatticePolytope,
    barycenter,
    contains_point,
    in_two_delta,
    lattice_points,
    two_delta_points,
)
from .stencil import (
    Certificate,
    CoverCertificate,
    MatchingCertificate,
    certify,
    sample_generic_form,
    separating_halfspace,
)

GENERICALLY_MORSE = "generically_morse"
NEVER_MORSE = "never_morse"


@dataclass(frozen=True)
class MorseVerdict:
    kind: str
    certificate: Certificate

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "certificate": self.certificate.to_json_dict()}


def quadratic_restriction(M: LatticePolytope) -> Optional[LatticePolytope]:
    """Hull of the pair points of M: its slice by the quadratic simplex.

    Returns None when M contains no quadratic lattice point.
    """
    if M.n < 1:
        raise ValueError("empty support")
    if in_two_delta(M):
        pts = lattice_points(M)
    else:
        pts = tuple(
            p
            for p in two_delta_points(M.n)
            if isinstance(contains_point(M, p), ConvexCombination)
        )
    if not pts:
        return None
    return LatticePolytope(M.n, pts, False)


def classify_support(M: LatticePolytope) -> MorseVerdict:
    """Generic Morse-ness of singularities with Newton polyhedron inside M.

    Restricts M to the quadratic simplex, certifies, and cross-checks the
    verdict against direct membership of the barycenter in M itself.
    """
    restricted = quadratic_restriction(M)
    center = barycenter(M.n)
    direct = contains_point(M, center)
    if restricted is None:
        if isinstance(direct, ConvexCombination):
            raise RuntimeError("barycenter inside M but no quadratic points found")
        cert = CoverCertificate((), (), separating_halfspace((), (), M.n))
        return MorseVerdict(NEVER_MORSE, cert)
    cert = certify(restricted)
    generically_morse = isinstance(cert, MatchingCertificate)
    if generically_morse != isinstance(direct, ConvexCombination):
        raise RuntimeError("restricted certificate disagrees with direct membership")
    return MorseVerdict(GENERICALLY_MORSE if generically_morse else NEVER_MORSE, cert)


def is_morse(f: SparsePolynomial) -> bool:
    """Nondegeneracy of the Hessian at the origin (exact determinant)."""
    return bool(determinant(hessian_at_zero(f)))


@dataclass(frozen=True)
class GenericityReport:
    entries: Tuple[Tuple[int, bool], ...]  # (seed, is_morse)

    @property
    def all_morse(self) -> bool:
        return all(m for _, m in self.entries)

    def to_json_dict(self) -> dict:
        return {
            "samples": [{"seed": s, "is_morse": m} for s, m in self.entries],
            "all_morse": self.all_morse,
        }


def genericity_gap_demo(M: LatticePolytope, seeds: Sequence[int]) -> GenericityReport:
    """Sampled evidence that generically-Morse supports give Morse functions.

    For each seed, draws a generic quadratic form on the quadratic
    restriction of M, appends seeded higher-order terms supported in M,
    and records the Morse test.  Any non-Morse sample is an implementation
    error and raises.
    """
    verdict = classify_support(M)
    if verdict.kind != GENERICALLY_MORSE:
        raise ValueError("support is not generically Morse")
    restricted = quadratic_restriction(M)
    entries = []
    for seed in seeds:
        form = sample_generic_form(restricted, seed)
        f = form.as_polynomial()
        rng = random.Random(seed ^ 0x5EED)
        for g in M.generators:
            exp = list(g)
            if M.orthant_recession and sum(exp) < 3:
                # bump into degree >= 3 along the recession cone
                exp[rng.randrange(M.n)] += 3 - sum(exp)
            if sum(exp) >= 3:
                f = f + monomial(M.n, tuple(exp), rng.randint(1, 100))
        morse = is_morse(f)
        if not morse:
            raise RuntimeError(f"sampled generic function is not Morse (seed {seed})")
        entries.append((seed, morse))
    return GenericityReport(tuple(entries))
