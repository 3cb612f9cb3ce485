#pragma once

#include "vexp/csv_io.hpp"
#include "vexp/embedding.hpp"
#include "vexp/errors.hpp"
#include "vexp/experiment.hpp"
#include "vexp/exponent.hpp"
#include "vexp/grid_function.hpp"
#include "vexp/lambert_w.hpp"
#include "vexp/maximal.hpp"
#include "vexp/norms.hpp"
#include "vexp/numeric.hpp"
#include "vexp/parallel.hpp"
