# the bad action is only enabled after b
states: s0 s1 s2 s3
initial: s0
alphabet: a b c bad
s0 a s1
s0 b s2
s1 c s0
s2 c s0
s2 bad s3
