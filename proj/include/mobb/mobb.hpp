#ifndef MOBB_MOBB_HPP_
#define MOBB_MOBB_HPP_

#include "mobb/bench.hpp"
#include "mobb/bounds.hpp"
#include "mobb/generators.hpp"
#include "mobb/geometry.hpp"
#include "mobb/instance.hpp"
#include "mobb/io.hpp"
#include "mobb/lp.hpp"
#include "mobb/oracle.hpp"
#include "mobb/polyline.hpp"
#include "mobb/relax.hpp"
#include "mobb/rng.hpp"
#include "mobb/scalar.hpp"
#include "mobb/scalarize.hpp"
#include "mobb/search.hpp"
#include "mobb/versions.hpp"

#endif  // MOBB_MOBB_HPP_
