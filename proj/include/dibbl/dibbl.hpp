#pragma once

#include "angle_unit.hpp"
#include "dual.hpp"
#include "error.hpp"
#include "evaluate.hpp"
#include "expr.hpp"
#include "format.hpp"
#include "oracle.hpp"
#include "parse.hpp"
#include "rational.hpp"
#include "slope_engine.hpp"
