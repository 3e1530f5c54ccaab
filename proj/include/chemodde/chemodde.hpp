#pragma once

#include "chemodde/analysis.hpp"
#include "chemodde/config.hpp"
#include "chemodde/core.hpp"
#include "chemodde/dynamics.hpp"
#include "chemodde/errors.hpp"
#include "chemodde/exponents.hpp"
#include "chemodde/io.hpp"
#include "chemodde/kernels.hpp"
#include "chemodde/series.hpp"
#include "chemodde/washout.hpp"
