from ltlab.core.Cli import main

"""Main module."""

"""
 * Project Name: ltlab
 * Created by eniocc
 * Date: 02/05/2023
 * Time: 10:12
 *
 * Edited by: eniocc
 * Date: 02/05/2023
 * Time: 10:12
"""

if __name__ == '__main__':
    main()
