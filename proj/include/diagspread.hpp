#pragma once

#include "diagspread/errors.hpp"
#include "diagspread/perm.hpp"
#include "diagspread/perm_group.hpp"
#include "diagspread/conjugacy.hpp"
#include "diagspread/set_orbit.hpp"
#include "diagspread/group_table.hpp"
#include "diagspread/automorphism.hpp"
#include "diagspread/coset_action.hpp"
#include "diagspread/diagonal.hpp"
#include "diagspread/multiset.hpp"
#include "diagspread/witness.hpp"
#include "diagspread/ab_lemma.hpp"
#include "diagspread/supplement.hpp"
#include "diagspread/cyclotomic.hpp"
#include "diagspread/character_table.hpp"
#include "diagspread/lemma25.hpp"
#include "diagspread/io.hpp"
#include "diagspread/catalog.hpp"
