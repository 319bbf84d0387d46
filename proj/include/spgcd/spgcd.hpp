#pragma once

#include "errors.hpp"
#include "modarith.hpp"
#include "field.hpp"
#include "dlog.hpp"
#include "ntt.hpp"
#include "unipoly.hpp"
#include "sparse_poly.hpp"
#include "sparse_interp.hpp"
#include "gcd_engine.hpp"
#include "oracle.hpp"
#include "polyfile.hpp"
#include "instance.hpp"
