#pragma once

#include "ssprk/catalog.hpp"
#include "ssprk/error.hpp"
#include "ssprk/experiments.hpp"
#include "ssprk/family53.hpp"
#include "ssprk/lowstorage.hpp"
#include "ssprk/matrix.hpp"
#include "ssprk/method_json.hpp"
#include "ssprk/monotonicity.hpp"
#include "ssprk/optimize.hpp"
#include "ssprk/order_conditions.hpp"
#include "ssprk/stability.hpp"
#include "ssprk/tableau.hpp"
