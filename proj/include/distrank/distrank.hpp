#pragma once

// Umbrella header for the distrank feature-selection library.

#include "distrank/cli.hpp"
#include "distrank/evaluate.hpp"
#include "distrank/io.hpp"
#include "distrank/kmeans.hpp"
#include "distrank/knn.hpp"
#include "distrank/matrix.hpp"
#include "distrank/metrics.hpp"
#include "distrank/pairwise.hpp"
#include "distrank/preprocess.hpp"
#include "distrank/scores.hpp"
#include "distrank/select.hpp"
#include "distrank/stats.hpp"
#include "distrank/synth.hpp"
