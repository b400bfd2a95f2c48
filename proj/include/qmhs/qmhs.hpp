#pragma once

#include "qmhs/algebra.hpp"
#include "qmhs/coeff.hpp"
#include "qmhs/cyclo.hpp"
#include "qmhs/derivations.hpp"
#include "qmhs/error.hpp"
#include "qmhs/evalq.hpp"
#include "qmhs/products.hpp"
#include "qmhs/relations.hpp"
#include "qmhs/series.hpp"
#include "qmhs/verify.hpp"
