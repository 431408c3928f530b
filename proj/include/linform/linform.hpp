#pragma once

#include "linform/affine.hpp"
#include "linform/amplify.hpp"
#include "linform/construction.hpp"
#include "linform/image.hpp"
#include "linform/int_set.hpp"
#include "linform/integer.hpp"
#include "linform/linear_form.hpp"
#include "linform/local_search.hpp"
#include "linform/modular.hpp"
#include "linform/normalize.hpp"
#include "linform/numtheory.hpp"
#include "linform/reproduction.hpp"
#include "linform/residue_constructions.hpp"
#include "linform/small_sets.hpp"
