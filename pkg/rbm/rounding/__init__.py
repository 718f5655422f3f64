from .claims import ClaimsReport, ClaimViolation, assert_claims, check_claims
from .constants import OPTIMIZED, PAPER, Constants, load_preset
from .scan import ScanEviction, ScanPlan, case3_scan
from .service import RoundingResult, round_solution
from .snapshot import Block, Snapshot, delta, take_snapshot
from .state import RoundingState
from .targets import Window, compute_targets, compute_window
from .trace import RoundingTrace
