#pragma once

#include "qca/electrostatics.hpp"
#include "qca/errors.hpp"
#include "qca/hamiltonian.hpp"
#include "qca/io.hpp"
#include "qca/model.hpp"
#include "qca/oracle.hpp"
#include "qca/scenarios.hpp"
#include "qca/solver.hpp"
#include "qca/sweep.hpp"
#include "qca/types.hpp"
