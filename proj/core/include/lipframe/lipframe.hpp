#pragma once

#include "lipframe/errors.hpp"
#include "lipframe/frames.hpp"
#include "lipframe/lipschitz.hpp"
#include "lipframe/metric.hpp"
#include "lipframe/multiplier.hpp"
#include "lipframe/numeric.hpp"
#include "lipframe/symbol.hpp"
