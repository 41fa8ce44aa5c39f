#pragma once

#include "halfbound/analytic.hpp"
#include "halfbound/critical.hpp"
#include "halfbound/error.hpp"
#include "halfbound/io.hpp"
#include "halfbound/potentials.hpp"
#include "halfbound/scan.hpp"
#include "halfbound/scatter.hpp"
#include "halfbound/specfun.hpp"
