"""Network creation games where every player only sees her k-neighbourhood."""
from .bestresponse import (
    BestResponse,
    Verdict,
    ViewTooLarge,
    Witness,
    best_response,
    best_response_max,
    best_response_sum,
    verify_lke,
)
from .constructions import (
    ParamError,
    TorusParams,
    build_cycle,
    build_open_torus,
    build_torus,
    f_set,
    heawood,
    torus_params_for,
)
from .domset import DominatingInstance, min_dominating_set
from .dynamics import DynamicsTrace, RoundStats, Status, run, sweep
from .game import (
    Disconnecting,
    Finite,
    GameConfig,
    RejectedFrontier,
    Variant,
    delta,
    is_improving,
    player_cost,
    social_cost,
    star_cost,
)
from .generators import MaxAttemptsExceeded, gnp_connected, random_tree
from .graph import (
    UNREACHABLE,
    OwnedGraph,
    View,
    bfs_distances,
    diameter,
    eccentricity,
    girth,
    graph_power,
    read_edgelist,
    view,
    write_edgelist,
)

__version__ = "0.1.0"
