"""A walkthrough of the rule-based Maltese-to-Arabic transliterator.

Run with: python demos/transliteration_walkthrough.py
"""

from etymix import default_table, transliterate

table = default_table()

# The scanner works on the lower-cased surface, always taking the longest
# grapheme it can match at the current position. Maltese digraphs such as
# għ therefore map as a unit rather than letter by letter.
for token in ["għandha", "karozza", "fenomenali"]:
    print(f"{token:12s} -> {transliterate(token, table)}")

# Closed-class function words bypass the scanner entirely: they carry a
# fixed whole-token mapping, checked before any grapheme matching.
print()
for token in ["Il-", "tal-", "u", "li"]:
    print(f"{token:12s} -> {transliterate(token, table)}  (closed class)")

# Digits map position by position through the symbol table and stay in
# logical order; a right-to-left renderer handles the display direction.
print()
print(f"{'2022':12s} -> {transliterate('2022', table)}")

# Anything with no mapping at all passes through untouched.
print(f"{'!':12s} -> {transliterate('!', table)}")
