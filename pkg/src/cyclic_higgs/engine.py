"""One-stop construction of all exact data for a group."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .chevalley import LieAlgebra
from .involutions import EndoMap, TorusData, cartan_involution, hitchin_involution, torus_subalgebra
from .principal import KostantIrrep, PrincipalTriple, build_principal_triple, kostant_decomposition
from .rootsys import RootSystemData, build_root_system


@dataclass
class Engine:
    rs: RootSystemData

    @cached_property
    def alg(self) -> LieAlgebra:
        return LieAlgebra(self.rs)

    @cached_property
    def triple(self) -> PrincipalTriple:
        return build_principal_triple(self.alg)

    @cached_property
    def kostant(self) -> list[KostantIrrep]:
        return kostant_decomposition(self.triple)

    @cached_property
    def rho(self) -> EndoMap:
        return cartan_involution(self.alg)

    @cached_property
    def sigma(self) -> EndoMap:
        return hitchin_involution(self.triple, self.kostant)

    @cached_property
    def lam(self) -> EndoMap:
        return self.sigma @ self.rho

    @cached_property
    def torus(self) -> TorusData:
        return torus_subalgebra(self.rho, self.sigma)

    @property
    def exponents(self) -> list[int]:
        return [ir.exponent for ir in self.kostant]


@lru_cache(maxsize=None)
def load(group: str) -> Engine:
    """Engine for a named group ('A2', 'C2', 'G2', 'A3', 'A3-smoke') or a JSON Cartan matrix."""
    return Engine(build_root_system(group))
