#pragma once

// Umbrella header for the LP-AE library: a linear-programming-aware
// autoencoder (hybrid reconstruction + squared-hinge violation penalty +
// objective bias), an exact tableau simplex solver with KKT verification,
// Frank-Wolfe projection, a synthetic hospital-scheduling benchmark, and an
// experiment harness.

#include "lpae/adam.hpp"
#include "lpae/checkpoint.hpp"
#include "lpae/dataset.hpp"
#include "lpae/experiment.hpp"
#include "lpae/hospital.hpp"
#include "lpae/hybrid.hpp"
#include "lpae/linalg.hpp"
#include "lpae/lp.hpp"
#include "lpae/manifest.hpp"
#include "lpae/mlp.hpp"
#include "lpae/numio.hpp"
#include "lpae/projection.hpp"
#include "lpae/rng.hpp"
#include "lpae/simplex.hpp"
#include "lpae/trainer.hpp"
#include "lpae/vertices.hpp"
