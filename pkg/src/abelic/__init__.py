"""Exact arithmetic on powers of CM elliptic curves.

Orders, isogenies given by matrices, Hermitian polarization classes,
splittings of abelian subvarieties, finite torsion models, rigorous bound
enclosures and exponent ledgers.
"""

from __future__ import annotations

from .bounds import (
    BoundQuery,
    BoundResult,
    effective_bogomolov,
    galateau_bound,
    galateau_lambda,
    isogeny_bound,
    main_bound,
    translate_theta,
)
from .errors import ALL_ERRORS, AbelicError
from .isogeny import (
    IsogenyData,
    deg_image,
    deg_preimage,
    degree,
    dual_and_alpha,
    isogeny_data,
    kernel_structure,
    pushforward_degree,
)
from .ledger import LedgerTrace, mu_rules, naive_verify, thm28_ledger, thm41_ledger
from .matrices import Matrix, MorphismMatrix, regular_rep
from .normal_forms import hnf, smith, smith_form
from .orders import (
    EISENSTEIN,
    GAUSSIAN,
    ZZ,
    OrderElement,
    OrderSpec,
    canonical_associate,
    element_ops,
    euclid_divmod,
    make_order,
)
from .polarization import (
    FormalChernClass,
    HermitianClass,
    binomial_multiplicity,
    degree_of_class,
    intersection_number,
    pullback_class,
    t_bounds,
    tensor_power,
    verify_gael,
    verify_relchiave,
)
from .splitting import (
    ProductStructure,
    SubvarietyModule,
    SubvarietySplit,
    complement_and_split,
    diagram_check,
    full_split,
    make_module,
    normalize_T,
    phi_family,
    product_assemble,
    push_degree_bound,
    saturate,
)
from .torsion import FiniteModel, PointSet, cross_check, enumerate_kernel, finite_stab, stab_lemma_checks

__version__ = "0.1.0"
