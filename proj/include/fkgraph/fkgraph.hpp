#pragma once

#include "fkgraph/abelian_group.hpp"
#include "fkgraph/checks.hpp"
#include "fkgraph/error.hpp"
#include "fkgraph/graph.hpp"
#include "fkgraph/graph_io.hpp"
#include "fkgraph/ideal_lattice.hpp"
#include "fkgraph/int_matrix.hpp"
#include "fkgraph/invariant.hpp"
#include "fkgraph/ktheory.hpp"
#include "fkgraph/serialize.hpp"
#include "fkgraph/smith.hpp"
#include "fkgraph/spectrum.hpp"
