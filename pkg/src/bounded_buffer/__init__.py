"""Packet scheduling in a size-bounded buffer: offline solvers, online
schedulers, adversarial instances and an oracle-backed evaluation harness."""

__version__ = "0.1.0"

from .feasibility import (  # noqa: E402
    Infeasible,
    ProvisionalSchedule,
    align_by_value,
    build_provisional,
    edf_deliver,
    edf_feasible,
)
from .generators import (  # noqa: E402
    RandomTraceParams,
    expected_ratio,
    lower_bound_opt_total,
    lower_bound_trace,
    random_campaign,
    random_trace,
)
from .model import (  # noqa: E402
    MICRO,
    Checkpoint,
    Drop,
    DropReason,
    Packet,
    ScheduleOutcome,
    SemanticsMode,
    Trace,
    TraceValidationError,
    occupancy_check,
    validate_trace,
)
from .offline import (  # noqa: E402
    InstanceTooLarge,
    OfflineResult,
    brute_force_opt,
    paper_greedy_offline,
)
from .online import GRQ, NaiveGreedy, UnitEDF, make_scheduler, run_online, simulate  # noqa: E402
