#pragma once

#include "orw/errors.hpp"
#include "orw/graph.hpp"
#include "orw/spectral.hpp"
#include "orw/latency.hpp"
#include "orw/rng.hpp"
#include "orw/walker.hpp"
#include "orw/wireless.hpp"
#include "orw/report.hpp"
#include "orw/experiments.hpp"
