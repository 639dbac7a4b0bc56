#pragma once

// Umbrella header for the fourmean verification toolkit.

#include "fourmean/extremal.hpp"
#include "fourmean/matrix.hpp"
#include "fourmean/pseudospectra.hpp"
#include "fourmean/realpoly.hpp"
#include "fourmean/rng.hpp"
#include "fourmean/serialize.hpp"
#include "fourmean/tuples.hpp"
