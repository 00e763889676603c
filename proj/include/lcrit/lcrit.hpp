#pragma once

#include "lcrit/arith.hpp"
#include "lcrit/bounds.hpp"
#include "lcrit/report.hpp"
#include "lcrit/special.hpp"
#include "lcrit/ternary.hpp"
#include "lcrit/ternary_lfunction.hpp"
#include "lcrit/util.hpp"
#include "lcrit/version.hpp"
