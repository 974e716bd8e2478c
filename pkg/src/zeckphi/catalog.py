"""Named morphisms used throughout the package and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

from .graded import GradedMorphism, GradedOutputMap, GradedSymbol
from .morphism import Coding, Decoration, Morphism, parse_coding, parse_morphism


@dataclass(frozen=True)
class FiniteEntry:
    morphism: Morphism
    seed: str
    coding: Coding | None = None
    # number of leading fixed-point letters to drop
    shift: int = 0
    description: str = ""


FIB = parse_morphism("1 -> 1 2 ; 2 -> 1")
G = parse_morphism("a -> b a a ; b -> b a")
H = parse_morphism("1 -> 1 4 ; 3 -> 1 4 ; 4 -> 3")
SIGMA = parse_morphism("c0 -> c0 c1 ; c1 -> c2 c3 ; c2 -> c0 c1 c2 ; c3 -> c3 c2 c3")

D_IZ = parse_morphism("3 -> 3 2 ; 2 -> 3")
D_CZ = H
D_DZ = parse_morphism("5 -> 5 3 ; 3 -> 5")

D_IBETA = parse_morphism("1 -> 1 2 ; 2 -> 4 ; 4 -> 1 2 4 4")
D_CBETA = parse_morphism("1 -> 4 3 ; 2 -> 2 1 ; 3 -> 2 1 ; 3' -> 1 3' 4 3 ; 4 -> 1 3' 4")
D_CBETA_CODING = parse_coding("1 => 1 ; 2 => 2 ; 3 => 3 ; 3' => 3 ; 4 => 4")
D_DBETA = parse_morphism("2 -> 5 4 2 ; 4 -> 5 4 2 ; 5 -> 7 ; 7 -> 7 5 4 2")

# decoration of the g-word giving x_sigma
SIGMA_DECORATION = Decoration({"a": ("c2", "c3"), "b": ("c0", "c1")})

FINITE: dict[str, FiniteEntry] = {
    "fib": FiniteEntry(FIB, "1", description="Fibonacci morphism"),
    "g": FiniteEntry(G, "b", description="g_{a,b}: a -> baa, b -> ba"),
    "h": FiniteEntry(H, "1", description="2-block Fibonacci morphism on {1,3,4}"),
    "sigma": FiniteEntry(SIGMA, "c0", description="Lucas-interval coding morphism"),
    "dIZ": FiniteEntry(D_IZ, "3", description="differences of Zeckendorf increase points"),
    "dCZ": FiniteEntry(D_CZ, "1", description="differences of Zeckendorf constancy points"),
    "dDZ": FiniteEntry(D_DZ, "5", description="differences of Zeckendorf decrease points (from -1)"),
    "dIbeta": FiniteEntry(D_IBETA, "1", description="differences of base-phi increase points"),
    "dCbeta": FiniteEntry(
        D_CBETA, "2", coding=D_CBETA_CODING, description="differences of base-phi constancy points"
    ),
    "dDbeta": FiniteEntry(
        D_DBETA, "7", shift=1, description="differences of base-phi decrease points"
    ),
}

TAU = GradedMorphism({0: ((0, 0), (1, 1)), 1: ((0, 0),)}, seed_tag=0)
TAU_SEED = GradedSymbol(0, 0)

GAMMA = GradedMorphism(
    {
        "c0": ((0, "c0"), (0, "c1")),
        "c1": ((0, "c2"), (0, "c3")),
        "c2": ((2, "c0"), (2, "c1"), (2, "c2")),
        "c3": ((1, "c3"), (2, "c2"), (1, "c3")),
    },
    seed_tag="c0",
)
GAMMA_SEED = GradedSymbol(0, "c0")
DELTA = GradedOutputMap({"c0": (0, 1), "c1": (2,), "c2": (2, 3), "c3": (3, 3)})
PROJECTION = GradedOutputMap.projection()

GRADED = {
    "tau": (TAU, TAU_SEED, PROJECTION),
    "gamma": (GAMMA, GAMMA_SEED, None),
    "delta": (GAMMA, GAMMA_SEED, DELTA),
}

NAMES = tuple(FINITE) + tuple(GRADED)
