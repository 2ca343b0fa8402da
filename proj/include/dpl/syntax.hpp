#ifndef DPL_SYNTAX_HPP_
#define DPL_SYNTAX_HPP_

#include "dpl/syntax/ast.hpp"
#include "dpl/syntax/metrics.hpp"
#include "dpl/syntax/parser.hpp"
#include "dpl/syntax/printer.hpp"
#include "dpl/syntax/vocabulary.hpp"

#endif  // DPL_SYNTAX_HPP_
