// Umbrella header.

#ifndef UALG_UALG_HPP_
#define UALG_UALG_HPP_

#include "algebra.hpp"
#include "commutator.hpp"
#include "congruence.hpp"
#include "cube.hpp"
#include "cube_terms.hpp"
#include "delta.hpp"
#include "engine.hpp"
#include "error.hpp"
#include "matrix.hpp"
#include "partition.hpp"
#include "subpower.hpp"
#include "term.hpp"
#include "tuple_set.hpp"
#include "verify.hpp"

#endif  // UALG_UALG_HPP_
