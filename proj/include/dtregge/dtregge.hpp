#pragma once

#include "dtregge/numeric.hpp"
#include "dtregge/matrix.hpp"
#include "dtregge/complex_core.hpp"
#include "dtregge/ribbon_graph.hpp"
#include "dtregge/regge_geometry.hpp"
#include "dtregge/polygon_space.hpp"
#include "dtregge/polytope.hpp"
#include "dtregge/measure_engine.hpp"
#include "dtregge/intersection.hpp"
#include "dtregge/enumeration.hpp"
#include "dtregge/pairing.hpp"
#include "dtregge/io.hpp"
