#pragma once

#include "bool_matrix.hpp"
#include "covering.hpp"
#include "char_matrices.hpp"
#include "dynamic_update.hpp"
#include "reduct.hpp"
#include "bench.hpp"
#include "io.hpp"
