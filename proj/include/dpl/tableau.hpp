#ifndef DPL_TABLEAU_HPP_
#define DPL_TABLEAU_HPP_

#include "dpl/tableau/branch.hpp"
#include "dpl/tableau/prover.hpp"
#include "dpl/tableau/rules.hpp"

#endif  // DPL_TABLEAU_HPP_
