"""Eventually 2-periodic resolutions and integral (co)homology of central quotients."""

from .catalog import FAMILIES, CatalogEntry, catalog
from .complex import ChainMap, FreeComplex, GRMatrix, Report, check_complex, mapping_cone, mat_mul, reduce, suspend
from .fox import fox_derivative, fundamental_check, induced_map
from .groupring import (
    AmalgamOfCyclics,
    FiniteCyclicOrder,
    FreeReduction,
    GroupRingElement,
    PolycyclicCollection,
    RepresentationWitness,
    RewritingSystem,
    RingContext,
    Verdict,
    augment,
    gr_add,
    gr_mul,
    gr_neg,
    gr_scalar,
    is_zero,
    ngk,
    parse_grexpr,
)
from .homology import (
    AbelianGroup,
    HomologyTable,
    IntMatrix,
    abelianization_oracle,
    augment_complex,
    homology_table,
    snf,
)
from .periodic import (
    NullHomotopy,
    PeriodicResolution,
    assemble_periodic,
    build_cone_tower,
    shamash_map,
    stable_rank,
    verify_null_homotopy,
)
from .presentation import (
    CentralData,
    Presentation,
    PresentationError,
    SeedResolution,
    lyndon_partial,
    load_presentation,
    verify_seed,
)
from .words import Alphabet, Generator, Word, parse_word, word_inv, word_mul

__version__ = "0.1.0"
