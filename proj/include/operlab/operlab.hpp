#pragma once

#include "operlab/error.hpp"
#include "operlab/exactalg.hpp"
#include "operlab/ore.hpp"
#include "operlab/exponent_set.hpp"
#include "operlab/dormancy.hpp"
#include "operlab/radii.hpp"
#include "operlab/duality.hpp"
#include "operlab/modsearch.hpp"
#include "operlab/fusion.hpp"
