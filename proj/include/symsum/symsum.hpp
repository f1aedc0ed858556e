#pragma once

#include "symsum/asymptotic.hpp"
#include "symsum/balance.hpp"
#include "symsum/cyclotomic.hpp"
#include "symsum/errors.hpp"
#include "symsum/expsum.hpp"
#include "symsum/field.hpp"
#include "symsum/grid.hpp"
#include "symsum/group_algebra.hpp"
#include "symsum/lambda.hpp"
#include "symsum/poly_function.hpp"
#include "symsum/rational.hpp"
