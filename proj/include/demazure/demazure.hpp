#pragma once

// Umbrella header.

#include "demazure/errors.hpp"
#include "demazure/fga.hpp"
#include "demazure/fgl.hpp"
#include "demazure/gcm.hpp"
#include "demazure/hecke.hpp"
#include "demazure/lattice.hpp"
#include "demazure/linalg.hpp"
#include "demazure/power_series.hpp"
#include "demazure/qfraction.hpp"
#include "demazure/rational.hpp"
#include "demazure/relations.hpp"
#include "demazure/scalar.hpp"
#include "demazure/twisted.hpp"
#include "demazure/weyl.hpp"
