#pragma once

#include "hk/error.hpp"
#include "hk/field.hpp"
#include "hk/groebner.hpp"
#include "hk/ideal.hpp"
#include "hk/length_table.hpp"
#include "hk/monomial.hpp"
#include "hk/monomial_ideal.hpp"
#include "hk/order.hpp"
#include "hk/parse.hpp"
#include "hk/polynomial.hpp"
#include "hk/rational.hpp"
#include "hk/ring.hpp"
#include "hk/limits.hpp"
#include "hk/analysis.hpp"
