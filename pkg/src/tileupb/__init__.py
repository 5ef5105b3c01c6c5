"""Tile structures on bipartite grids, the product bases they induce,
unextendibility certificates, bound entangled states, and
entanglement-assisted discrimination protocols."""

from .grid import (
    MAX_DIM,
    Tile,
    TileGridContentError,
    TileGridFormatError,
    TileStructure,
    ValidationReport,
    parse_tile_grid,
    serialize,
    validate,
)
from .rectangles import (
    DEFAULT_TILE_CAP,
    EnumerationCapError,
    SpecialRectangle,
    UTileVerdict,
    UTileWitness,
    enumerate_special_rectangles,
    extension_witness,
    is_u_tile,
)
from .states import (
    STOPPER_LABEL,
    BipartiteState,
    NotUTileError,
    ProductState,
    UPBSet,
    build_copb,
    build_upb,
    inner_product,
    matrix_rank,
    state_matrix,
    stopper,
    tile_basis,
    upb_state_labels,
)
from .families import (
    FAMILY_NAMES,
    example1,
    extend_columns,
    fig2,
    five_tile,
    prop2,
    prop3,
)
from .verify import (
    OrthogonalityReport,
    SearchResult,
    UPBCheckReport,
    check_orthogonal_set,
    check_upb,
    complement_basis,
    seesaw_search,
)
from .ppt import (
    DensityMatrix,
    PPTReport,
    build_ppt_state,
    partial_transpose,
    ppt_report,
)
from .locc import (
    ALICE,
    BOB,
    Branch,
    CompositeState,
    DiscriminationReport,
    Identify,
    LocalProjector,
    OnePartyFinish,
    attach_resource,
    build_lemma1_protocol,
    build_theorem3_protocol,
    protocol_to_json_dict,
    verify_protocol,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIM",
    "Tile",
    "TileGridContentError",
    "TileGridFormatError",
    "TileStructure",
    "ValidationReport",
    "parse_tile_grid",
    "serialize",
    "validate",
    "DEFAULT_TILE_CAP",
    "EnumerationCapError",
    "SpecialRectangle",
    "UTileVerdict",
    "UTileWitness",
    "enumerate_special_rectangles",
    "extension_witness",
    "is_u_tile",
    "STOPPER_LABEL",
    "BipartiteState",
    "NotUTileError",
    "ProductState",
    "UPBSet",
    "build_copb",
    "build_upb",
    "inner_product",
    "matrix_rank",
    "state_matrix",
    "stopper",
    "tile_basis",
    "upb_state_labels",
    "FAMILY_NAMES",
    "example1",
    "extend_columns",
    "fig2",
    "five_tile",
    "prop2",
    "prop3",
    "OrthogonalityReport",
    "SearchResult",
    "UPBCheckReport",
    "check_orthogonal_set",
    "check_upb",
    "complement_basis",
    "seesaw_search",
    "DensityMatrix",
    "PPTReport",
    "build_ppt_state",
    "partial_transpose",
    "ppt_report",
    "ALICE",
    "BOB",
    "Branch",
    "CompositeState",
    "DiscriminationReport",
    "Identify",
    "LocalProjector",
    "OnePartyFinish",
    "attach_resource",
    "build_lemma1_protocol",
    "build_theorem3_protocol",
    "protocol_to_json_dict",
    "verify_protocol",
    "__version__",
]
