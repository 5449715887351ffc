#pragma once

#include "arctest/error.hpp"
#include "arctest/perm.hpp"
#include "arctest/chain.hpp"
#include "arctest/permgroup.hpp"
#include "arctest/subgroup.hpp"
#include "arctest/structure.hpp"
#include "arctest/digraph.hpp"
#include "arctest/coset.hpp"
#include "arctest/cayley.hpp"
#include "arctest/diagonal.hpp"
#include "arctest/report.hpp"
#include "arctest/families.hpp"
#include "arctest/io.hpp"
#include "arctest/acceptance.hpp"
