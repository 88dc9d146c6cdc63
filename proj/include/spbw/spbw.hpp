#pragma once

// Convenience include for the whole library.

#include "spbw/catalog.hpp"
#include "spbw/classify.hpp"
#include "spbw/error.hpp"
#include "spbw/extension.hpp"
#include "spbw/ideal.hpp"
#include "spbw/maps.hpp"
#include "spbw/monomial.hpp"
#include "spbw/parser.hpp"
#include "spbw/poly.hpp"
#include "spbw/ring.hpp"
#include "spbw/specfile.hpp"
