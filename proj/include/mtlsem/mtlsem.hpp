#pragma once

#include "mtlsem/compilers.hpp"
#include "mtlsem/encodings.hpp"
#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"
#include "mtlsem/interval.hpp"
#include "mtlsem/interval_eval.hpp"
#include "mtlsem/mixed.hpp"
#include "mtlsem/pointwise.hpp"
#include "mtlsem/rational.hpp"
#include "mtlsem/syntax.hpp"
#include "mtlsem/timed.hpp"
