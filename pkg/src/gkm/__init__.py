"""GKM graphs: axial functions, monodromy, extensions to torus graphs and coverings."""
from .graph import Graph, TwoFace, enumerate_2faces, validate_base
from .labels import Labeling, check_gkm_q, derive_connection, derive_eps_c, validate_gkm
from .monodromy import AxialGroup, axial_group, phi_edge, phi_path
from .homotopy import betti_numbers, check_acyclic, decompose_loop, face_complex_h1
from .extension import build_extension, extension_rank, torus_extension_pipeline
from .covers import GraphCovering, check_pbim, validate_covering
from .io import GraphDocument, load_graph_document, parse_graph_document, serialize_graph_document

__all__ = [
    "Graph",
    "TwoFace",
    "enumerate_2faces",
    "validate_base",
    "Labeling",
    "check_gkm_q",
    "derive_connection",
    "derive_eps_c",
    "validate_gkm",
    "AxialGroup",
    "axial_group",
    "phi_edge",
    "phi_path",
    "betti_numbers",
    "check_acyclic",
    "decompose_loop",
    "face_complex_h1",
    "build_extension",
    "extension_rank",
    "torus_extension_pipeline",
    "GraphCovering",
    "check_pbim",
    "validate_covering",
    "GraphDocument",
    "load_graph_document",
    "parse_graph_document",
    "serialize_graph_document",
]

__version__ = "0.1.0"
