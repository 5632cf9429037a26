#ifndef FLOWTROPE_FLOWTROPE_HPP_
#define FLOWTROPE_FLOWTROPE_HPP_

#include "flowtrope/abelian.hpp"
#include "flowtrope/error.hpp"
#include "flowtrope/families.hpp"
#include "flowtrope/folding.hpp"
#include "flowtrope/freegroup.hpp"
#include "flowtrope/io.hpp"
#include "flowtrope/rewrite.hpp"
#include "flowtrope/symbolic.hpp"
#include "flowtrope/trope.hpp"

#endif  // FLOWTROPE_FLOWTROPE_HPP_
