# Fitted surface-code logical error model: p_L = prefactor * (base_scale * p_g) ** ((d + 1) / 2)
DEFAULT_PREFACTOR = 0.1
DEFAULT_BASE_SCALE = 100.0

# Upper bound per plumbing piece: 2 defect kinds * 3 logical error classes * 5d/4 rounds
PLUMBING_DEFECT_KINDS = 2
PLUMBING_ERROR_CLASSES = 3
PLUMBING_EDGE = 5 / 4

# Unit conventions: two qubits per unit of d in each spatial direction, one round per unit of d in time
DEFAULT_QUBITS_PER_D2 = 4.0
DEFAULT_ROUNDS_PER_D = 1.0

# Code distances
MIN_DISTANCE = 3
DEFAULT_D_MAX = 199

# State injection produces |A> states with error about 10 p_g
INJECTION_ERROR_RATIO = 10.0

# 15-to-1: 15 inputs, 1 output, error 35 p^3, geometric volume 192 plumbing pieces
FIFTEEN_INPUTS = 15
FIFTEEN_ERROR_COEFFICIENT = 35
FIFTEEN_ERROR_EXPONENT = 3
FIFTEEN_VOLUME = 192

# Block(k): 3k + 8 inputs, k outputs, error (3k + 1) p^2, geometric volume 96k + 216
BLOCK_INPUTS_PER_OUTPUT = 3
BLOCK_EXTRA_INPUTS = 8
BLOCK_ERROR_EXTRA = 1
BLOCK_ERROR_EXPONENT = 2
BLOCK_VOLUME_PER_OUTPUT = 96
BLOCK_VOLUME_OFFSET = 216
BLOCK_MIN_K = 2
MAX_BLOCK_LEVELS = 2

# First order rejection estimates are only meaningful well below this
REJECTION_WARNING_THRESHOLD = 0.3

# Search defaults
DEFAULT_EPS_MIN = 2.0**-5
DEFAULT_EPS_MAX = 2.0**5
DEFAULT_EPS_POINTS = 33
DEFAULT_K_MIN = 2
DEFAULT_K_MAX = 128
DEFAULT_MAX_15TO1_LEVELS = 4
GRID_CHUNK = 1 << 18

# Published table grid
DEFAULT_PIN_LIST = (1e-2, 1e-3, 1e-4)
DEFAULT_POUT_DECADES = (5, 20)

# Fault analysis guards
ENUMERATION_LIMIT = 10**7
EXACT_SITE_LIMIT = 24
PATTERN_CHUNK = 1 << 16
MC_BLOCK_SHOTS = 1 << 16
CHECK_COUNT = 3
BYPRODUCT_SUPPORT_SIZE = 3

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_IO = 3
EXIT_VALIDATION = 4

CONFIG_ENV_VAR = "MFP_CONFIG"

# Worked example reference: d=19 top level plus 15 d=9 structures
REFERENCE_WORKED_VOLUME = 3.1e7
