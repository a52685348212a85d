StringBuffer sb = create();
sb.append(x);
