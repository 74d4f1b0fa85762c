#pragma once

#include "compensated.hpp"
#include "dist.hpp"
#include "error.hpp"
#include "explicit_formula.hpp"
#include "primes.hpp"
#include "quadrature.hpp"
#include "report.hpp"
#include "specfun.hpp"
#include "zeros.hpp"
