#pragma once

#include "errors.hpp"
#include "exact_matrix.hpp"
#include "graph.hpp"
#include "monomial.hpp"
#include "lcm_lattice.hpp"
#include "simplicial.hpp"
#include "betti.hpp"
#include "local_cohomology.hpp"
#include "socle.hpp"
#include "invariants.hpp"
#include "parallel.hpp"
#include "report.hpp"
