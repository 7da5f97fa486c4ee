"""Joint SDN controller / network hypervisor placement and reverse path-flow load analysis."""
from .errors import (
    CapacityError,
    ConfigError,
    ConnectivityError,
    DegenerateInputError,
    GeoError,
    GraphMLParseError,
    TopologyError,
    VsdnPlaceError,
)
from .kernels import BACKEND
from .paths import ShortestPathTable, all_pairs_shortest, passes_through, path_nodes
from .placement import (
    ALL_OBJECTIVES,
    Assignment,
    CostTensor,
    MetricSet,
    ObjectiveKind,
    Placement,
    PlacementResult,
    compute_cost_tensor,
    converge_candidates,
    enumerate_placements,
    evaluate_metrics,
    optimal_assignment,
    solve,
    solve_many,
)
from .rpf import (
    LoadReport,
    Request,
    RequestOutcome,
    ScanRow,
    classify_request,
    rpf_simulate,
    tradeoff_observed,
    tradeoff_scan,
)
from .topology import (
    PhysicalLink,
    PhysicalNode,
    PhysicalTopology,
    haversine_km,
    link_latency,
    parse_graphml,
)
from .vsdn import ScenarioConfig, VsdnInstance, generate_vsdns, load_scenario

__version__ = "0.1.0"
