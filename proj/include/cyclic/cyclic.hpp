#pragma once

#include "cyclic/errors.hpp"
#include "cyclic/power_series.hpp"
#include "cyclic/functions.hpp"
#include "cyclic/weights.hpp"
#include "cyclic/growth_weight.hpp"
#include "cyclic/cyclicity.hpp"
#include "cyclic/spectra.hpp"
#include "cyclic/model.hpp"
#include "cyclic/pipeline.hpp"
#include "cyclic/random.hpp"
