#pragma once

// Umbrella header for the hyperspectral bitfield segmentation toolkit.

#include "hsbit/annotate.hpp"
#include "hsbit/common.hpp"
#include "hsbit/dataset.hpp"
#include "hsbit/encoding.hpp"
#include "hsbit/experiments.hpp"
#include "hsbit/gradcheck.hpp"
#include "hsbit/io.hpp"
#include "hsbit/metrics.hpp"
#include "hsbit/model.hpp"
#include "hsbit/nn.hpp"
#include "hsbit/optim.hpp"
#include "hsbit/scene.hpp"
#include "hsbit/spectral.hpp"
#include "hsbit/tensor.hpp"
#include "hsbit/types.hpp"
