// Umbrella header.
#pragma once

#include "biext/integer.hpp"
#include "biext/matrix.hpp"
#include "biext/snf.hpp"
#include "biext/errors.hpp"
#include "biext/abgroup.hpp"
#include "biext/complex.hpp"
#include "biext/bicomplex.hpp"
#include "biext/resolution.hpp"
#include "biext/psi.hpp"
#include "biext/pairing.hpp"
#include "biext/corpus.hpp"
#include "biext/document.hpp"
