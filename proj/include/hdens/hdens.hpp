#pragma once

#include "hdens/error.hpp"
#include "hdens/hypergraph.hpp"
#include "hdens/dyadic.hpp"
#include "hdens/bigfloat.hpp"
#include "hdens/parallel.hpp"
#include "hdens/count.hpp"
#include "hdens/density.hpp"
#include "hdens/graph.hpp"
#include "hdens/constructions.hpp"
#include "hdens/quadratic.hpp"
#include "hdens/chains.hpp"
#include "hdens/io.hpp"
