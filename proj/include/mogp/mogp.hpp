#ifndef MOGP_MOGP_HPP
#define MOGP_MOGP_HPP

#include "mogp/evolve.hpp"
#include "mogp/fitness.hpp"
#include "mogp/oracle.hpp"
#include "mogp/random.hpp"
#include "mogp/selection.hpp"
#include "mogp/tree.hpp"
#include "mogp/variation.hpp"

#endif
