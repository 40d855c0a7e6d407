#pragma once

#include "sperner/census.hpp"
#include "sperner/cycle_basis.hpp"
#include "sperner/error.hpp"
#include "sperner/generators.hpp"
#include "sperner/graph.hpp"
#include "sperner/io.hpp"
#include "sperner/lattice.hpp"
#include "sperner/oracle.hpp"
#include "sperner/sweep.hpp"
#include "sperner/time_vector.hpp"
