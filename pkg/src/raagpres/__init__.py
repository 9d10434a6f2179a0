"""Presentations of the finite-index subgroups Gamma_n = pi^-1(nZ) of right-angled
Artin groups, with 2-simplex eliminations and independent oracles."""

from .builder import build, build_gamma_presentation, dicks_leary, family_words, make_context
from .complex import (FlagComplex, barycentric_subdivide, cone_off, euler_characteristic, fixture,
                      homology_h1, load_complex, ordering_and_tree, sigma_one, validate)
from .oracle import reidemeister_schreier, todd_coxeter, verify_presentation
from .presentation import Presentation, abelianize, presentation_stats, smith_normal_form, tietze_define
from .simplifier import (add_simplex_overlay, cone_off_pipeline, eliminate_family, eligible_eliminations,
                         overlay_pipeline, overlay_simplify, simplify, tau_action)
from .words import Word, exponent_sum, expand, normal_form, parse_word, rewrite_to_subgroup_alphabet, theta

__version__ = "0.1.0"
