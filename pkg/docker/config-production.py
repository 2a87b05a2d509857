import os

TESTING = True if os.environ.get("TESTING") else False
ENVIRONMENT = "Production"

SENTRY_DSN = os.getenv("SENTRY_DSN")

# integration grid
STEPS_PER_MM = int(os.getenv("PBG_STEPS_PER_MM", 2000))
MIN_STEPS = 100

# classical solvers
SHOOTING_TOLERANCE = float(os.getenv("PBG_SHOOTING_TOLERANCE", 1e-9))
NEWTON_MAX_ITER = int(os.getenv("PBG_NEWTON_MAX_ITER", 50))
DECOUPLED_THRESHOLD = 1e-12
RESONANCE_THRESHOLD = 1e-8
DEGENERACY_THRESHOLD = 1e-12

# fluctuation propagator
COMMUTATOR_TOLERANCE = float(os.getenv("PBG_COMMUTATOR_TOLERANCE", 1e-8))
COND_THRESHOLD = float(os.getenv("PBG_COND_THRESHOLD", 1e12))

# weak-interaction quadrature
QUAD_RTOL = 1e-10
GL_NODES_PER_MM = 64
GL_RTOL = 1e-9
GL_MAX_DOUBLINGS = 10

# monte carlo
MC_SAMPLES = int(os.getenv("PBG_MC_SAMPLES", 10**6))
MC_SHARD_SIZE = 2**16

# sweeps
SWEEP_WORKERS = int(os.getenv("PBG_SWEEP_WORKERS", os.cpu_count() or 1))
PRESET_DIR = os.environ.get("PBG_PRESET_DIR", "/app/sweeps/presets")
CHECK_SEED = int(os.getenv("PBG_CHECK_SEED", 20240101))

# service
API_MAX_POINTS = int(os.getenv("PBG_API_MAX_POINTS", 2000))
