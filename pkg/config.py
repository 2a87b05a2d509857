import os

os.environ["TESTING"] = "yup"
TESTING = True
ENVIRONMENT = "Development"

SENTRY_DSN = os.getenv("SENTRY_DSN")

# integration grid
STEPS_PER_MM = int(os.getenv("PBG_STEPS_PER_MM", 1000))
MIN_STEPS = 100

# classical solvers
SHOOTING_TOLERANCE = float(os.getenv("PBG_SHOOTING_TOLERANCE", 1e-9))
NEWTON_MAX_ITER = int(os.getenv("PBG_NEWTON_MAX_ITER", 50))
DECOUPLED_THRESHOLD = 1e-12  # |K_a| * L below which signal/idler are treated as uncoupled
RESONANCE_THRESHOLD = 1e-8  # |D * L| below which a pump term uses its limit form
DEGENERACY_THRESHOLD = 1e-12

# fluctuation propagator
COMMUTATOR_TOLERANCE = float(os.getenv("PBG_COMMUTATOR_TOLERANCE", 1e-8))
COND_THRESHOLD = float(os.getenv("PBG_COND_THRESHOLD", 1e12))

# weak-interaction quadrature
QUAD_RTOL = 1e-10
GL_NODES_PER_MM = 64
GL_RTOL = 1e-9
GL_MAX_DOUBLINGS = 8

# monte carlo
MC_SAMPLES = int(os.getenv("PBG_MC_SAMPLES", 10**6))
MC_SHARD_SIZE = 2**16

# sweeps
SWEEP_WORKERS = int(os.getenv("PBG_SWEEP_WORKERS", 1))
PRESET_DIR = os.getenv("PBG_PRESET_DIR", os.path.join(os.path.dirname(__file__), "sweeps", "presets"))
CHECK_SEED = int(os.getenv("PBG_CHECK_SEED", 20240101))

# service
API_MAX_POINTS = int(os.getenv("PBG_API_MAX_POINTS", 500))
