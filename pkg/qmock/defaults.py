################################################
# Default configuration for qmock
################################################

###
# Series evaluation
###

# Cap on the number of terms of any series or product tail
max_terms                                   = 500

# Relative tolerance of the adaptive truncation rule
tol                                         = 1e-15

# Minimum number of terms per series tail, raise to force extended truncation
min_terms                                   = 0

# Evaluators raise a pole error when a lattice distance falls below this value
pole_guard                                  = 1e-6

###
# Contour integration
###

# Initial number of equispaced nodes on the circle
contour_points                              = 32

# Node doubling stops with a truncation error beyond this count
max_contour_points                          = 2 ** 14

# Fixed contour radius, None selects the radius automatically
contour_radius                              = None

###
# Verification sampling
###

# Random seed for samplers
seed                                        = 1

# Number of samples per identity check
n_samples                                   = 50

# Uniform range of the nome
q_min                                       = 0.05
q_max                                       = 0.5

# Arguments are drawn as q^t with t uniform in this band
band_min                                    = 0.1
band_max                                    = 0.9

# Samples closer than this to a lattice point are redrawn
sample_guard                                = 1e-2

# Maximum number of redraws of a single sample
max_redraws                                 = 1000

###
# Thresholds
###

pointwise_threshold                         = 1e-9
operator_threshold                          = 1e-8
theta_threshold                             = 1e-12
commutation_threshold                       = 1e-13
formal_threshold                            = 1e-10

###
# Output
###

# One of text, json, csv
output_format                               = 'text'

# Truncation order of formal series in checks and command line output
formal_order                                = 30
