#pragma once

#include "qia/algebras.hpp"
#include "qia/catalog.hpp"
#include "qia/core.hpp"
#include "qia/decide.hpp"
#include "qia/eval.hpp"
#include "qia/free2.hpp"
#include "qia/lattice.hpp"
#include "qia/magma.hpp"
#include "qia/search.hpp"
#include "qia/term.hpp"
#include "qia/text_io.hpp"
