#ifndef COLLATZ_COLLATZ_HPP
#define COLLATZ_COLLATZ_HPP

#include "collatz/anb.hpp"
#include "collatz/dynamics.hpp"
#include "collatz/errors.hpp"
#include "collatz/halfsplit.hpp"
#include "collatz/identities.hpp"
#include "collatz/montecarlo.hpp"
#include "collatz/natural.hpp"
#include "collatz/parallel.hpp"
#include "collatz/sweep.hpp"

#endif  // COLLATZ_COLLATZ_HPP
