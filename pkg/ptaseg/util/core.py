"""
Project-wide utilities.
"""

import glob
import logging
import os

from .. import exc


log = logging.getLogger(__name__)


__all__ = (
    'parse_floats', 'expand_paths', 'generate_settings', 'main',
    'CONFIG_TEMPLATE',
)


def parse_floats(arg, name='values'):
    """
    Parse a comma-separated list of reals.

    >>> parse_floats('0.1,0.3')
    (0.1, 0.3)

    :param arg:
        String such as ``'0.1, 0.3'``

    :param name:
        Field name used in error messages
    """
    try:
        return tuple(float(v) for v in arg.split(',') if v.strip())
    except ValueError:
        raise exc.ValidationError({name: '%r is not a list of reals.' % arg})


def expand_paths(patterns):
    """
    Expand shell-style globs into a sorted, de-duplicated list of paths.

    A pattern matching nothing is kept as is, so the reader reports the
    missing file.

    :param patterns:
        Iterable of paths or glob patterns
    """
    paths = []
    for pattern in patterns:
        matches = sorted(glob.glob(os.path.expanduser(pattern)))
        for path in matches or [pattern]:
            if path not in paths:
                paths.append(path)
    log.debug('expand_paths: %r -> %r', patterns, paths)
    return paths


#: Configuration template emitted when a user runs ``ptaseg init``.
CONFIG_TEMPLATE = '''
"""
This configuration file is just Python code. You may override any global
defaults by specifying them here.

Every PTASEG_* setting is also the default of the matching command-line flag.
"""
from ptaseg.conf.settings import *

import os.path

# Path where the config is found.
CONF_ROOT = os.path.dirname(__file__)

############
# PTA loss #
############

# Blend weight of the piecewise term in ``total = base + lambda * L_PT``.
# Default: 3.0
PTASEG_LAMBDA = 3.0

# Number of angular sectors.
# Default: 10
PTASEG_SECTORS = 10

# Band width in pixels.
# Default: 2.0
PTASEG_BAND_WIDTH = 2.0

# Probability threshold.
# Default: 0.5
PTASEG_THRESHOLD = 0.5

# Weighted cross-entropy weights (background, foreground...).
# Default: (0.1, 0.3)
PTASEG_WCE_WEIGHTS = (0.1, 0.3)

########################
# Synthetic experiment #
########################

# Number of seeded replicates and the root seed.
# Default: 20, 0
PTASEG_SIMULATION_REPLICATES = 20
PTASEG_SIMULATION_SEED = %(seed)r

# Band width used by the synthetic experiment.
# Default: 8.0
PTASEG_SIMULATION_BAND_WIDTH = 8.0

##############
# Refinement #
##############

# Fidelity weight and iteration budget.
# Default: 0.5, 2000
PTASEG_REFINE_MU = 0.5
PTASEG_REFINE_ITERATIONS = 2000

###############
# Application #
###############

# Number of worker threads.
# Default: 4
PTASEG_NUM_WORKERS = 4
'''


def generate_settings(config_template=None):
    """
    Used to emit a generated configuration from ``config_template``.

    :param config_template:
        Config template
    """
    if config_template is None:
        config_template = CONFIG_TEMPLATE.strip()

    return config_template % dict(seed=0)


def main():
    """CLI application used to run ptaseg."""
    from logan.runner import run_app

    run_app(
        project='ptaseg',
        default_config_path='~/.ptaseg/ptaseg.conf.py',
        default_settings='ptaseg.conf.settings',
        settings_initializer=generate_settings,
        settings_envvar='PTASEG_CONF',
    )


if __name__ == '__main__':
    main()
