StringBuilder sb = create();
sb.append(x);
