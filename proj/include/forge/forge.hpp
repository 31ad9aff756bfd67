#ifndef FORGE_FORGE_HPP
#define FORGE_FORGE_HPP

#include "chern.hpp"
#include "construct.hpp"
#include "graded_matrix.hpp"
#include "groebner_engine.hpp"
#include "hilbert.hpp"
#include "ideal.hpp"
#include "io.hpp"
#include "liaison.hpp"
#include "module_order.hpp"
#include "polynomial.hpp"
#include "resolution.hpp"
#include "rng.hpp"

#endif  // FORGE_FORGE_HPP
