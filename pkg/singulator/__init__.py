"""
Singulator - invariants of isolated hypersurface singularities and the
Floer-theoretic shadows of their monodromy
"""

from .config import default_config, load_config
from .errors import (
    InconsistencyError,
    NonIsolatedSingularityError,
    SingularityError,
    SingulatorError,
)
from .hashing import fingerprint_payload, fingerprint_polynomial
from .invariants import fiber_topology, lct, lefschetz_sequence, zeta
from .local_algebra import milnor_number, multiplicity, sigma_invariant, tjurina_number
from .poly import INFINITE, Polynomial, format_poly, parse_poly
from .resolution import ResolutionTree, embedded_resolution, find_ample_weights, make_separating, to_dot
from .spectral import E1Page, e1_page, lct_via_floer, multiplicity_via_ss

__version__ = "0.1.0"
__all__ = [
    "Polynomial",
    "ResolutionTree",
    "E1Page",
    "SingulatorError",
    "parse_poly",
    "format_poly",
    "milnor_number",
    "multiplicity",
    "embedded_resolution",
    "e1_page",
    "Singulator",
]


class Singulator:
    """Main entry point: parses input text and assembles invariant reports"""

    def __init__(self, config=None):
        """
        Initialize Singulator

        Args:
            config: Optional configuration dictionary (merged over the defaults)
        """
        self.config = default_config()
        if config:
            self.config.update(config)

    @classmethod
    def from_file(cls, path):
        return cls(load_config(path))

    def parse(self, text, variables=None):
        return parse_poly(text, variables)

    def _isolated(self, f):
        mu = milnor_number(f, max_pairs=self.config['max_standard_basis_pairs'])
        if mu == INFINITE:
            raise NonIsolatedSingularityError(f"{f} does not have an isolated singularity at the origin")
        return int(mu)

    def lefschetz_range(self, tree):
        """Default iterate range: a few periods of lcm(m_i), capped"""
        return min(self.config['lefschetz_periods'] * tree.lcm_multiplicity(), self.config['lefschetz_cap'])

    def resolve(self, f, separating=None):
        tree = embedded_resolution(f)
        if separating:
            tree = make_separating(tree, separating)
        return tree

    def invariants(self, f):
        """
        Full invariant report of a singularity

        Args:
            f: Polynomial with f(0) = 0

        Returns:
            Dictionary with mu, nu, lct, Lefschetz numbers, zeta factors and
            Milnor-fiber topology (the last four need a plane curve)
        """
        return self.invariants_with_tree(f)[0]

    def invariants_with_tree(self, f):
        """Same report plus the resolution it was read from (None beyond plane curves)"""
        mu = self._isolated(f)
        nu = multiplicity(f)
        report = {
            'input': format_poly(f),
            'variables': list(f.variables),
            'fingerprint': fingerprint_polynomial(f),
            'mu': mu,
            'nu': nu,
            'lct': 'unavailable',
            'lefschetz': 'unavailable',
            'zeta': 'unavailable',
            'fiber': 'unavailable',
        }
        if f.nvars != 2:
            return report, None

        tree = embedded_resolution(f)
        fiber = fiber_topology(tree)
        if fiber.mu != mu:
            raise InconsistencyError(f"mu from the resolution ({fiber.mu}) differs from the standard basis ({mu})")
        z = zeta(tree)
        report.update({
            'lct': str(lct(tree)),
            'lefschetz': lefschetz_sequence(tree, self.lefschetz_range(tree)),
            'zeta': {str(d): e for d, e in z.factors},
            'fiber': fiber.to_dict(),
        })
        return report, tree

    def milnor(self, f):
        """mu, tau and (plane curves) sigma"""
        pairs = self.config['max_standard_basis_pairs']
        mu = milnor_number(f, max_pairs=pairs)
        if mu == INFINITE:
            raise NonIsolatedSingularityError(f"{f} does not have an isolated singularity at the origin")
        report = {
            'input': format_poly(f),
            'mu': int(mu),
            'tau': int(tjurina_number(f, max_pairs=pairs)),
            'sigma': 'unavailable',
        }
        if f.nvars == 2:
            report['sigma'] = int(sigma_invariant(f, max_pairs=pairs))
        return report

    def spectral_page(self, f, m, weights=None):
        tree = make_separating(self.resolve(f), m)
        return tree, e1_page(tree, m, weights)

    def floer_lct(self, f, m_max=None):
        tree = self.resolve(f)
        m_max = m_max or self.config['floer_mmax'] or tree.lcm_multiplicity()
        return lct_via_floer(tree, m_max)

    def digest(self, payload):
        return fingerprint_payload(payload)
