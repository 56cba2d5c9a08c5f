"""Graph designs and their down-links to P3-designs."""

from .design import (
    Design,
    DownLinkCertificate,
    VerificationReport,
    admissible_order,
    eta1_lower_bound,
    glue_downlinks,
    verify_design,
    verify_downlink,
)
from .downlinks import (
    DownlinkError,
    downlink,
    downlink_cycle,
    downlink_general,
    downlink_kite,
    downlink_path,
    downlink_reduced,
    downlink_star,
)
from .graph import (
    KITE,
    P3,
    Bipartite,
    Block,
    Complete,
    Graph,
    Join,
    Multipartite,
    PatternKind,
    Union,
    build_graph,
    cycle,
    graph_pattern,
    path,
    pattern_copies,
    star,
)
from .p3 import p3_partition, p3_partition_components

__version__ = "0.1.0"

__all__ = [
    "p3_partition",
    "p3_partition_components",
    "Design",
    "DownLinkCertificate",
    "VerificationReport",
    "admissible_order",
    "eta1_lower_bound",
    "glue_downlinks",
    "verify_design",
    "verify_downlink",
    "DownlinkError",
    "downlink",
    "downlink_cycle",
    "downlink_general",
    "downlink_kite",
    "downlink_path",
    "downlink_reduced",
    "downlink_star",
    "KITE",
    "P3",
    "Bipartite",
    "Block",
    "Complete",
    "Graph",
    "Join",
    "Multipartite",
    "PatternKind",
    "Union",
    "build_graph",
    "cycle",
    "graph_pattern",
    "path",
    "pattern_copies",
    "star",
]
