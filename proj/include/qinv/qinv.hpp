#pragma once

#include "arith.hpp"
#include "closedform.hpp"
#include "cyclotomic.hpp"
#include "error.hpp"
#include "jones.hpp"
#include "manifold.hpp"
#include "nt.hpp"
#include "ohtsuki.hpp"
#include "series.hpp"
#include "surgery.hpp"
#include "truncpoly.hpp"
