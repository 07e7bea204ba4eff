#pragma once

// Umbrella header.

#include "sl2sheaf/field.hpp"
#include "sl2sheaf/poly.hpp"
#include "sl2sheaf/extension.hpp"
#include "sl2sheaf/matrix.hpp"
#include "sl2sheaf/poly_matrix.hpp"
#include "sl2sheaf/partition.hpp"
#include "sl2sheaf/point.hpp"
#include "sl2sheaf/sl2_module.hpp"
#include "sl2sheaf/families.hpp"
#include "sl2sheaf/nullcone.hpp"
#include "sl2sheaf/hom_matrix.hpp"
#include "sl2sheaf/graded.hpp"
#include "sl2sheaf/sheaves.hpp"
#include "sl2sheaf/heller.hpp"
#include "sl2sheaf/report.hpp"
