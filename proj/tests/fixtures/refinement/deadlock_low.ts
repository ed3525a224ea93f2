# s1 is now only entered by b, whose partner in the top system keeps running
states: s0 s1 s2 s3
initial: s0
alphabet: a b
s0 b s2
s2 a s2
s2 b s1
