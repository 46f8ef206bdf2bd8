#pragma once

// Everything in one include.
#include "modalcoh/modality.hpp"
#include "modalcoh/term.hpp"
#include "modalcoh/chain.hpp"
#include "modalcoh/theory.hpp"
#include "modalcoh/diagram.hpp"
#include "modalcoh/sharp.hpp"
#include "modalcoh/interp.hpp"
#include "modalcoh/enumerate.hpp"
#include "modalcoh/schema.hpp"
#include "modalcoh/rewrite.hpp"
#include "modalcoh/mirror.hpp"
#include "modalcoh/simplicial.hpp"
#include "modalcoh/decide.hpp"
#include "modalcoh/normalize.hpp"
#include "modalcoh/quotient.hpp"
