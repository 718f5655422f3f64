from .exact import OracleResult, brute_force_cost, optimal_cost
from .greedy import greedy_largest_block
