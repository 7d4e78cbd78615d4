"""
Django settings for the ptaseg project.

Every ``PTASEG_*`` value is a default for the library and the command-line
tools. Override them from the configuration file generated by
``ptaseg init``.
"""

import os
import sys

# Path where the code is found. (aka project root)
BASE_DIR = os.path.normpath(os.path.join(os.path.dirname(__file__), os.pardir))

# Path where the config file is found.
CONF_ROOT = os.path.abspath(os.path.dirname(__file__))

# A boolean that turns on/off debug mode.
# Default: False
DEBUG = False

#################
# Core Settings #
#################

# Applications enabled in this installation. ``ptaseg`` must be present for
# its management commands to be discovered.
INSTALLED_APPS = (
    'rest_framework',
    'ptaseg',
)

# ptaseg keeps no database state.
DATABASES = {}

# Only used by Django internals; there are no sessions or signed cookies.
SECRET_KEY = 'ptaseg-has-no-secrets'

USE_TZ = True

from ptaseg.version import __version__  # noqa
PTASEG_VERSION = __version__

##################
# REST Framework #
##################

# Version of the JSON report layout. Bump when a report field changes.
PTASEG_SCHEMA_VERSION = '1.0'

REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'ptaseg.api.renderers.ReportJSONRenderer',
    ],
    'COERCE_DECIMAL_TO_STRING': False,
    'UNAUTHENTICATED_USER': None,
}

############
# PTA loss #
############

# Blend weight of the piecewise term in ``total = base + lambda * L_PT``.
# Default: 3.0
PTASEG_LAMBDA = 3.0

# Number of angular sectors the boundary bands are divided into.
# Default: 10
PTASEG_SECTORS = 10

# Band width in pixels: band members lie strictly closer than this to the
# region boundary.
# Default: 2.0
PTASEG_BAND_WIDTH = 2.0

# Probability threshold; a pixel belongs to the segmentation when its
# probability is strictly greater than this.
# Default: 0.5
PTASEG_THRESHOLD = 0.5

# Floor applied to |t| (or v) before taking the reciprocal.
# Default: 1e-6
PTASEG_EPSILON = 1e-6

# Probabilities are clamped into [PTASEG_PROB_MIN, 1] before logarithms.
# Default: 1e-12
PTASEG_PROB_MIN = 1e-12

# Per-sector statistic: 't-test' (PTA) or 'mean-diff' (sPTA).
# Default: 't-test'
PTASEG_MODE = 't-test'

# Weighted cross-entropy weights by class label. Labels beyond the last entry
# reuse the last weight.
# Default: (0.1, 0.3)
PTASEG_WCE_WEIGHTS = (0.1, 0.3)

########################
# Synthetic experiment #
########################

# Side length of the square synthetic domain.
# Default: 200
PTASEG_SIMULATION_SIZE = 200

# Half-open ground-truth square [start, stop) on both axes.
# Default: (70, 130)
PTASEG_SIMULATION_RECT = (70, 130)

# Intensity distributions inside and outside the ground truth.
# Default: 3.5, 2.0, 0.0, 2.0
PTASEG_SIMULATION_MEAN_INSIDE = 3.5
PTASEG_SIMULATION_SIGMA_INSIDE = 2.0
PTASEG_SIMULATION_MEAN_OUTSIDE = 0.0
PTASEG_SIMULATION_SIGMA_OUTSIDE = 2.0

# Dilation/erosion offset (cases 2 and 3) and shift (cases 4 and 5).
# Default: 2, 5
PTASEG_SIMULATION_OFFSET = 2
PTASEG_SIMULATION_SHIFT = 5

# Offset used when the five cases are recreated on a real image.
# Default: 3
PTASEG_OVERLAY_OFFSET = 3

# Number of seeded replicates and the root seed.
# Default: 20, 0
PTASEG_SIMULATION_REPLICATES = 20
PTASEG_SIMULATION_SEED = 0

# Band width used by the synthetic experiment. The outer band must reach past
# the largest case offset so the bands of a misplaced case straddle the true
# edge.
# Default: 8.0
PTASEG_SIMULATION_BAND_WIDTH = 8.0

##############
# Refinement #
##############

# Fidelity weight per changed pixel, relative to the initial mask size.
# Default: 0.5
PTASEG_REFINE_MU = 0.5

# Iterations and edge moves scored per iteration.
# Default: 2000, 8
PTASEG_REFINE_ITERATIONS = 2000
PTASEG_REFINE_MOVES = 8

# Acceptance rule: 'greedy' or 'annealing'.
# Default: 'greedy'
PTASEG_REFINE_ACCEPTANCE = 'greedy'

# Starting temperature and geometric cooling factor for annealing.
# Default: 0.0, 0.995
PTASEG_REFINE_TEMPERATURE = 0.0
PTASEG_REFINE_COOLING = 0.995

# Band width used while refining; as for the experiment, the outer band must
# reach past the distance the edge has to travel.
# Default: 8.0
PTASEG_REFINE_BAND_WIDTH = 8.0

###############
# Application #
###############

# Number of worker threads used when a command is given several files or
# replicates.
# Default: 4
PTASEG_NUM_WORKERS = 4

###########
# Logging #
###########
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': "[%(asctime)s] [%(process)d] [%(levelname)s] %(message)s",
            'datefmt': "%Y-%m-%d %H:%M:%S %z"
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'stream': sys.stderr,
            'formatter': 'verbose',
        },
    },
    'loggers': {
        'ptaseg': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
        'ptaseg_cli': {
            'handlers': ['console'],
            'level': 'INFO',
        },
    }
}

if os.getenv('PTASEG_DEBUG'):
    DEBUG = True
    LOGGING['loggers']['ptaseg']['level'] = 'DEBUG'
