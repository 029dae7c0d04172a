#pragma once

#include "smaxwell/config.hpp"
#include "smaxwell/cost_model.hpp"
#include "smaxwell/csv.hpp"
#include "smaxwell/error.hpp"
#include "smaxwell/expm.hpp"
#include "smaxwell/grid.hpp"
#include "smaxwell/initial_data.hpp"
#include "smaxwell/maxwell_operator.hpp"
#include "smaxwell/noise.hpp"
#include "smaxwell/nonlinearity.hpp"
#include "smaxwell/parallel.hpp"
#include "smaxwell/parareal.hpp"
#include "smaxwell/philox.hpp"
#include "smaxwell/propagators.hpp"
#include "smaxwell/statistics.hpp"
#include "smaxwell/studies.hpp"
