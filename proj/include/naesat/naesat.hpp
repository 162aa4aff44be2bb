#pragma once

#include "naesat/bench.hpp"
#include "naesat/dimacs.hpp"
#include "naesat/ensemble_io.hpp"
#include "naesat/formula.hpp"
#include "naesat/hash.hpp"
#include "naesat/instance_gen.hpp"
#include "naesat/metrics.hpp"
#include "naesat/parallel.hpp"
#include "naesat/pauli.hpp"
#include "naesat/qaoa_train.hpp"
#include "naesat/rng.hpp"
#include "naesat/sls.hpp"
#include "naesat/solver.hpp"
#include "naesat/statevector.hpp"
#include "naesat/version.hpp"
