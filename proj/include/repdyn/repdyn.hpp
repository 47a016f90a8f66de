#pragma once

/**
 * @file repdyn.hpp
 * @brief Everything at once.
 */

#include "repdyn/classify.hpp"
#include "repdyn/dynamics.hpp"
#include "repdyn/exact.hpp"
#include "repdyn/harness.hpp"
#include "repdyn/modpoly.hpp"
#include "repdyn/numberfield.hpp"
#include "repdyn/polyring.hpp"
#include "repdyn/quartic.hpp"
#include "repdyn/sieve.hpp"
#include "repdyn/typeclasses.hpp"
#include "repdyn/upoly.hpp"
