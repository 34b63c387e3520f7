# Finite fields, cyclotomic integers, transforms, codes and tables
