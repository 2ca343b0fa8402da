#ifndef DPL_DPL_HPP_
#define DPL_DPL_HPP_

#include "dpl/algebra.hpp"
#include "dpl/errors.hpp"
#include "dpl/semantics.hpp"
#include "dpl/syntax.hpp"
#include "dpl/tableau.hpp"
#include "dpl/validity.hpp"

#endif  // DPL_DPL_HPP_
