# top of a chain where the deadlock condition is not transitive
states: s0 s1 s2 s3
initial: s0
alphabet: a b
s0 b s0
s0 b s2
s1 b s1
s1 b s2
s2 a s1
s2 a s2
s2 a s3
s2 b s1
