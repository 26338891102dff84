#pragma once

#include <morph/core.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace morph {

/// Spells out a lexical form, applying the orthographic rules at each
/// '+' boundary, left to right:
///
///   y -> i       consonant + y before s, ed, er, est   (spy+s -> spies)
///   epenthesis   e inserted before s after s z x ch sh or a rewritten i
///   elision      final e dropped before ed, ing, er, est (admire+ing -> admiring)
///   s-deletion   's after a stem ending in s becomes '  (saw+s+'s -> saws')
///   ie -> y      before ing                             (lie+ing -> lying)
///   gemination   final consonant doubled before a vowel-initial suffix
///                for monosyllabic roots ending in single vowel + consonant
///                other than w, x, y                      (stop+ed -> stopped)
///
/// Hyphens and apostrophes are ordinary characters.
std::string surface_of(const LexicalForm& form);

/// True if gemination doubles the last letter of `root` before a vowel-initial suffix.
bool doubles_final_consonant(std::string_view root);

/// Every lexical form with a legal suffix sequence that spells `surface`.
/// Candidate roots are not checked against any lexicon. The zero-suffix form
/// is always included. Results are sorted by rendered lexical form.
std::vector<LexicalForm> segmentations(std::string_view surface);

} // namespace morph
