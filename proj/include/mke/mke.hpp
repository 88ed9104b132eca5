#pragma once

// Umbrella header for the whole library.

#include "mke/bloch.hpp"
#include "mke/errors.hpp"
#include "mke/experiments.hpp"
#include "mke/hamiltonian.hpp"
#include "mke/io.hpp"
#include "mke/rng.hpp"
#include "mke/roots.hpp"
#include "mke/solvers.hpp"
#include "mke/version.hpp"
