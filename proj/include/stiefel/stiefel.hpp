#pragma once

#include "stiefel/plocal_arith.hpp"
#include "stiefel/graded_module.hpp"
#include "stiefel/local_matrix.hpp"
#include "stiefel/graded_algebra.hpp"
#include "stiefel/space_catalog.hpp"
#include "stiefel/serre_ss.hpp"
#include "stiefel/chern_certificate.hpp"
#include "stiefel/verdict_engine.hpp"
#include "stiefel/json_io.hpp"
#include "stiefel/parallel.hpp"
