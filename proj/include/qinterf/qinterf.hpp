#pragma once

#include "qinterf/analytic.hpp"
#include "qinterf/common.hpp"
#include "qinterf/detection.hpp"
#include "qinterf/estimators.hpp"
#include "qinterf/field.hpp"
#include "qinterf/gaussian.hpp"
#include "qinterf/grid.hpp"
#include "qinterf/harness.hpp"
#include "qinterf/io.hpp"
#include "qinterf/linalg.hpp"
#include "qinterf/quadrature.hpp"
#include "qinterf/rng.hpp"
#include "qinterf/synthesis.hpp"
