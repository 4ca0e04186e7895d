#pragma once

/**
 * @file parc.hpp
 * Umbrella header for the partial-redundancy saturation prover.
 */

#include "parc/calculus.hpp"
#include "parc/clause.hpp"
#include "parc/constraints.hpp"
#include "parc/formula.hpp"
#include "parc/oracle.hpp"
#include "parc/ordering.hpp"
#include "parc/saturation.hpp"
#include "parc/substitution.hpp"
#include "parc/term.hpp"
#include "parc/tptp.hpp"
