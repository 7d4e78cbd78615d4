# These are constants that because they are tied directly to the underlying
# algorithms are explicitly NOT USER CONFIGURABLE.

# Per-sector statistic used by the piecewise term.
MODE_TTEST = 't-test'
MODE_MEAN_DIFF = 'mean-diff'
MODES = (MODE_TTEST, MODE_MEAN_DIFF)

# Base losses that the piecewise term can be added to.
BASE_CE = 'ce'
BASE_WCE = 'wce'
BASE_DSC = 'dsc'
BASES = (BASE_CE, BASE_WCE, BASE_DSC)

# Additive terms in a loss grid ('none' is the bare base loss).
ADDITIVES = ('none', 'spta', 'pta')

# Refinement acceptance rules.
ACCEPT_GREEDY = 'greedy'
ACCEPT_ANNEALING = 'annealing'
ACCEPTANCE_RULES = (ACCEPT_GREEDY, ACCEPT_ANNEALING)

# Smallest sample for which an unbiased variance exists.
MIN_SAMPLE_SIZE = 2

# Sector visualization: inner band pixels carry the sector index, outer band
# pixels carry the index plus this offset.
OUTER_SECTOR_OFFSET = 128

# Reasons reported when the piecewise term cannot be computed.
DEGENERATE_EMPTY = 'empty-segmentation'
DEGENERATE_BANDS = 'degenerate-bands'

# Simulation case labels, in order.
CASE_NAMES = ('correct', 'large', 'small', 'horizontal', 'diagonal')
