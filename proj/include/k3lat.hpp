#pragma once

// Umbrella header for the whole library.

#include "k3lat/numeric.hpp"
#include "k3lat/lattice.hpp"
#include "k3lat/enumerate.hpp"
#include "k3lat/smith.hpp"
#include "k3lat/isometry.hpp"
#include "k3lat/discriminant.hpp"
#include "k3lat/kneser.hpp"
#include "k3lat/k3.hpp"
#include "k3lat/bv.hpp"
#include "k3lat/theorem5.hpp"
#include "k3lat/io.hpp"
