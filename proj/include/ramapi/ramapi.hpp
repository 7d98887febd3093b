// Umbrella header.
#pragma once

#include "ramapi/corpus.hpp"
#include "ramapi/exact_expr.hpp"
#include "ramapi/moduli.hpp"
#include "ramapi/mpcore.hpp"
#include "ramapi/piseries.hpp"
#include "ramapi/precision.hpp"
#include "ramapi/qseries.hpp"
